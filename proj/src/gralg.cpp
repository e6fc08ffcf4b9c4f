#include "topoinv/gralg.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "topoinv/errors.hpp"
#include "topoinv/parity.hpp"

namespace topoinv {

Presentation::Presentation(std::optional<Truncation> trunc, std::vector<SimpleGenerator> gens, int ambient_bound,
                           PresentationKind kind, std::string name, std::string gen_symbol)
    : trunc_(trunc), gens_(std::move(gens)), ambient_bound_(ambient_bound), kind_(kind), name_(std::move(name)),
      gen_symbol_(std::move(gen_symbol))
{
    if (trunc_ && (trunc_->degree < 1 || trunc_->order < 1))
        throw InvalidParameters("truncated generator needs positive degree and order");
    if (gens_.size() > kMaxGenerators)
        throw InvalidParameters("at most " + std::to_string(kMaxGenerators) + " simple generators are supported");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree < 1)
            throw InvalidParameters("generator " + std::to_string(gens_[i].label) + " has non-positive degree");
        if (i > 0 && gens_[i].label <= gens_[i - 1].label)
            throw InvalidParameters("generator labels must be strictly increasing");
    }

    square_pos_.reserve(gens_.size());
    for (const auto& g : gens_) {
        switch (g.square.kind) {
        case SquareKind::Zero:
            square_pos_.push_back(kSquareZero);
            break;
        case SquareKind::Undetermined:
            square_pos_.push_back(kSquareUndetermined);
            break;
        case SquareKind::MapsTo: {
            auto pos = position_of(g.square.target);
            if (!pos)
                throw InvalidParameters("square of generator " + std::to_string(g.label) + " targets missing label " +
                                        std::to_string(g.square.target));
            if (gens_[*pos].degree != 2 * g.degree)
                throw InvalidParameters("square of generator " + std::to_string(g.label) +
                                        " must land in twice its degree");
            square_pos_.push_back(static_cast<int>(*pos));
            break;
        }
        }
    }
}

int Presentation::top_degree() const noexcept
{
    int top = trunc_ ? (trunc_->order - 1) * trunc_->degree : 0;
    for (const auto& g : gens_)
        top += g.degree;
    return top;
}

bool Presentation::has_undetermined_square() const noexcept
{
    return std::any_of(gens_.begin(), gens_.end(),
                       [](const SimpleGenerator& g) { return g.square.kind == SquareKind::Undetermined; });
}

std::optional<std::size_t> Presentation::position_of(int label) const
{
    auto it = std::lower_bound(gens_.begin(), gens_.end(), label,
                               [](const SimpleGenerator& g, int l) { return g.label < l; });
    if (it == gens_.end() || it->label != label)
        return std::nullopt;
    return static_cast<std::size_t>(it - gens_.begin());
}

int Presentation::degree(Monomial m) const noexcept
{
    int d = trunc_ ? static_cast<int>(m.y_exp) * trunc_->degree : 0;
    for (std::uint64_t bits = m.gens; bits; bits &= bits - 1)
        d += gens_[std::countr_zero(bits)].degree;
    return d;
}

bool Presentation::is_valid(Monomial m) const noexcept
{
    if (m.y_exp >= static_cast<std::uint32_t>(order()))
        return false;
    return gens_.size() == 64 || (m.gens >> gens_.size()) == 0;
}

Monomial Presentation::monomial_at(std::uint64_t index) const noexcept
{
    const std::uint64_t mask = (std::uint64_t(1) << gens_.size()) - 1;
    return {static_cast<std::uint32_t>(index >> gens_.size()), index & mask};
}

std::optional<Monomial> Presentation::multiply(Monomial a, Monomial b, UndeterminedPolicy policy,
                                               bool* undetermined_hit) const
{
    const std::uint32_t y = a.y_exp + b.y_exp;
    if (y >= static_cast<std::uint32_t>(order()))
        return std::nullopt;

    std::uint64_t mask = a.gens;
    for (std::uint64_t pending = b.gens; pending; pending &= pending - 1) {
        int pos = std::countr_zero(pending);
        // z_p * z_p rewrites to the square of z_p, which may collide again
        while (mask & (std::uint64_t(1) << pos)) {
            mask &= ~(std::uint64_t(1) << pos);
            int next = square_pos_[pos];
            if (next == kSquareZero)
                return std::nullopt;
            if (next == kSquareUndetermined) {
                if (policy == UndeterminedPolicy::Throw)
                    throw UndeterminedSquare(gens_[pos].label);
                if (undetermined_hit)
                    *undetermined_hit = true;
                return std::nullopt;
            }
            pos = next;
        }
        mask |= std::uint64_t(1) << pos;
    }
    return Monomial{y, mask};
}

std::string Presentation::generator_name(std::size_t position) const
{
    return gen_symbol_ + std::to_string(gens_.at(position).label);
}

std::string Presentation::monomial_name(Monomial m) const
{
    std::string out;
    if (m.y_exp > 0) {
        out = "y";
        if (m.y_exp > 1)
            out += "^" + std::to_string(m.y_exp);
    }
    for (std::uint64_t bits = m.gens; bits; bits &= bits - 1)
        out += generator_name(std::countr_zero(bits));
    return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Element

Element from_unsorted(const Presentation& p, std::vector<Monomial> terms)
{
    std::sort(terms.begin(), terms.end());
    std::vector<Monomial> kept;
    kept.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            kept.push_back(terms[i]);
        i = j;
    }
    Element e(p);
    e.terms_ = std::move(kept);
    return e;
}

Element Element::one(const Presentation& p)
{
    return monomial(p, Monomial{});
}

Element Element::monomial(const Presentation& p, Monomial m)
{
    if (!p.is_valid(m))
        throw InvalidParameters("monomial is not a basis element of " + p.name());
    Element e(p);
    e.terms_.push_back(m);
    return e;
}

Element Element::generator(const Presentation& p, int label)
{
    auto pos = p.position_of(label);
    if (!pos)
        throw InvalidParameters("no generator with label " + std::to_string(label) + " in " + p.name());
    return monomial(p, Monomial{0, std::uint64_t(1) << *pos});
}

Element Element::y(const Presentation& p)
{
    if (!p.trunc())
        throw InvalidParameters(p.name() + " has no polynomial generator");
    Element e(p);
    if (p.order() > 1)
        e.terms_.push_back(Monomial{1, 0});
    return e;
}

std::optional<int> Element::degree() const
{
    if (terms_.empty())
        return std::nullopt;
    int d = pres_->degree(terms_.front());
    for (const auto& m : terms_)
        if (pres_->degree(m) != d)
            return std::nullopt;
    return d;
}

Element Element::homogeneous_part(int d) const
{
    Element e(*pres_);
    for (const auto& m : terms_)
        if (pres_->degree(m) == d)
            e.terms_.push_back(m);
    return e;
}

void Element::toggle(Monomial m)
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

Element& Element::operator+=(const Element& other)
{
    if (pres_ != other.pres_)
        throw MixedPresentations();
    std::vector<Monomial> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(merged));
    terms_ = std::move(merged);
    return *this;
}

Element mul(const Presentation& p, const Element& a, const Element& b)
{
    if (&a.presentation() != &p || &b.presentation() != &p)
        throw MixedPresentations();
    std::vector<Monomial> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            if (auto m = p.multiply(x, y))
                out.push_back(*m);
    return from_unsorted(p, std::move(out));
}

std::vector<std::uint64_t> poincare(const Presentation& p)
{
    std::vector<std::uint64_t> series(static_cast<std::size_t>(p.top_degree()) + 1, 0);
    const int ydeg = p.trunc() ? p.trunc()->degree : 0;
    for (int e = 0; e < p.order(); ++e)
        series[static_cast<std::size_t>(e * ydeg)] += 1;
    // multiply by (1 + t^d) for each simple generator, high degrees first
    int reach = (p.order() - 1) * ydeg;
    for (const auto& g : p.gens()) {
        reach += g.degree;
        for (int d = reach; d >= g.degree; --d)
            series[d] += series[d - g.degree];
    }
    return series;
}

int top_degree(const Presentation& p)
{
    return p.top_degree();
}

// ---------------------------------------------------------------------------
// Steenrod squares

namespace {

// Sq^i of one real Stiefel monomial via the Cartan formula, folding in one
// generator at a time. acc[s] holds the part of the partial product that has
// absorbed s squaring degrees so far.
Element sq_real_monomial(const Presentation& p, int i, Monomial m)
{
    std::vector<std::vector<Monomial>> acc(static_cast<std::size_t>(i) + 1);
    acc[0].push_back(Monomial{});
    for (std::uint64_t bits = m.gens; bits; bits &= bits - 1) {
        const auto& g = p.gens()[std::countr_zero(bits)];
        const int q = g.label;
        std::vector<std::vector<Monomial>> next(acc.size());
        for (int s = 0; s <= i; ++s) {
            if (acc[s].empty())
                continue;
            for (int t = 0; s + t <= i && t <= q; ++t) {
                if (q + t > p.ambient_bound() || !binom_odd(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(t)))
                    continue;
                auto pos = p.position_of(q + t);
                if (!pos)
                    continue;
                const Monomial factor{0, std::uint64_t(1) << *pos};
                for (const auto& a : acc[s])
                    if (auto prod = p.multiply(a, factor))
                        next[s + t].push_back(*prod);
            }
        }
        for (auto& v : next) {
            Element reduced = from_unsorted(p, std::move(v));
            v = reduced.terms();
        }
        acc = std::move(next);
    }
    return from_unsorted(p, std::move(acc[i]));
}

} // namespace

Element steenrod_sq(const Presentation& p, int i, const Element& a)
{
    if (&a.presentation() != &p)
        throw MixedPresentations();
    if (i < 0)
        throw InvalidParameters("Steenrod square index must be non-negative");

    Element result(p);
    switch (p.kind()) {
    case PresentationKind::RealStiefel:
        for (const auto& m : a.terms())
            result += sq_real_monomial(p, i, m);
        return result;

    case PresentationKind::ComplexStiefel:
    case PresentationKind::QuaternionicStiefel:
        for (const auto& m : a.terms()) {
            const int d = p.degree(m);
            if (i == 0)
                result.toggle(m);
            else if (i == d) {
                const Element mono = Element::monomial(p, m);
                result += mul(p, mono, mono);
            } else if (i < d)
                throw UnsupportedPresentation("Sq^" + std::to_string(i) + " on a degree " + std::to_string(d) +
                                              " class of " + p.name() + " is not supported");
        }
        return result;

    case PresentationKind::Projective:
    case PresentationKind::Custom:
        break;
    }

    const int ydeg = p.trunc() ? p.trunc()->degree : 0;
    for (const auto& m : a.terms()) {
        if (m.gens != 0)
            throw UnsupportedPresentation("Steenrod squares on " + p.name() +
                                          " are only defined on powers of the polynomial generator");
        if (m.y_exp == 0) {
            if (i == 0)
                result.toggle(m);
            continue;
        }
        if (i % ydeg != 0)
            continue;
        const std::uint32_t step = static_cast<std::uint32_t>(i / ydeg);
        // Sq(y) = y + y^2, so Sq(y^e) = y^e (1 + y)^e
        if (!binom_odd(m.y_exp, step))
            continue;
        const std::uint32_t e = m.y_exp + step;
        if (e < static_cast<std::uint32_t>(p.order()))
            result.toggle(Monomial{e, 0});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Cup length

namespace {

struct SearchGenerator {
    Monomial mono;
    int degree;
    std::string name;
};

std::vector<SearchGenerator> search_generators(const Presentation& p)
{
    std::vector<SearchGenerator> out;
    if (p.trunc() && p.order() > 1)
        out.push_back({Monomial{1, 0}, p.trunc()->degree, "y"});
    for (std::size_t i = 0; i < p.num_gens(); ++i)
        out.push_back({Monomial{0, std::uint64_t(1) << i}, p.gens()[i].degree, p.generator_name(i)});
    return out;
}

class GeneratorSearch {
public:
    explicit GeneratorSearch(const Presentation& p) : p_(p), gens_(search_generators(p)), top_(p.top_degree()) {}

    CupLength run()
    {
        CupLength result;
        result.value = best(0, Monomial{});
        // replay the argmax chain
        Monomial m{};
        std::size_t from = 0;
        for (int left = result.value; left > 0; --left) {
            for (std::size_t g = from; g < gens_.size(); ++g) {
                auto next = step(m, g);
                if (next && 1 + best(g, *next) == left) {
                    result.witness.push_back(gens_[g].name);
                    m = *next;
                    from = g;
                    break;
                }
            }
        }
        result.caveat = caveat_;
        return result;
    }

private:
    std::optional<Monomial> step(Monomial m, std::size_t g)
    {
        if (p_.degree(m) + gens_[g].degree > top_)
            return std::nullopt;
        return p_.multiply(m, gens_[g].mono, UndeterminedPolicy::TreatAsZero, &caveat_);
    }

    // Largest number of further factors, drawn from gens_[from..] in
    // non-decreasing order, keeping the product m nonzero.
    int best(std::size_t from, Monomial m)
    {
        const std::uint64_t key = p_.index_of(m) * (gens_.size() + 1) + from;
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        int value = 0;
        for (std::size_t g = from; g < gens_.size(); ++g)
            if (auto next = step(m, g))
                value = std::max(value, 1 + best(g, *next));
        memo_.emplace(key, value);
        return value;
    }

    const Presentation& p_;
    std::vector<SearchGenerator> gens_;
    int top_;
    bool caveat_ = false;
    std::unordered_map<std::uint64_t, int> memo_;
};

// Computes successive powers of the augmentation ideal over the whole basis.
// Products of basis monomials are basis monomials or zero, so the r-th power
// is spanned by the set of monomials reachable as r-fold products of
// positive-degree basis elements; the cup length is the last r for which
// that set is nonempty.
CupLength exhaustive_oracle(const Presentation& p)
{
    const std::uint64_t dim = p.dimension();
    std::vector<std::uint64_t> positive;
    std::vector<int> degree(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        degree[idx] = p.degree(p.monomial_at(idx));
        if (idx != 0)
            positive.push_back(idx);
    }
    // visit positive-degree factors degree by degree
    std::stable_sort(positive.begin(), positive.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return degree[a] < degree[b]; });

    const int top = p.top_degree();
    bool caveat = false;
    // parent[level][idx] = (previous monomial, factor) for reconstructing a witness
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> parents;
    std::vector<std::uint8_t> level(dim, 0);
    constexpr std::uint64_t kNone = ~std::uint64_t(0);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> first(dim, {kNone, kNone});
    bool any = false;
    for (auto idx : positive) {
        level[idx] = 1;
        first[idx] = {0, idx};
        any = true;
    }
    if (!any)
        return {};
    parents.push_back(std::move(first));

    int value = 1;
    while (true) {
        std::vector<std::uint8_t> next(dim, 0);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> parent(dim, {kNone, kNone});
        bool nonempty = false;
        for (std::uint64_t a = 0; a < dim; ++a) {
            if (!level[a])
                continue;
            for (auto b : positive) {
                if (degree[a] + degree[b] > top)
                    break;
                auto prod = p.multiply(p.monomial_at(a), p.monomial_at(b), UndeterminedPolicy::TreatAsZero, &caveat);
                if (!prod)
                    continue;
                auto c = p.index_of(*prod);
                if (!next[c]) {
                    next[c] = 1;
                    parent[c] = {a, b};
                    nonempty = true;
                }
            }
        }
        if (!nonempty)
            break;
        level = std::move(next);
        parents.push_back(std::move(parent));
        ++value;
    }

    CupLength result;
    result.value = value;
    result.caveat = caveat;
    std::uint64_t cur = 0;
    for (std::uint64_t idx = 0; idx < dim; ++idx)
        if (level[idx]) {
            cur = idx;
            break;
        }
    for (int l = value - 1; l >= 0; --l) {
        auto [prev, factor] = parents[static_cast<std::size_t>(l)][cur];
        result.witness.push_back(p.monomial_name(p.monomial_at(factor)));
        cur = prev;
    }
    std::reverse(result.witness.begin(), result.witness.end());
    return result;
}

} // namespace

CupLength cup_length(const Presentation& p, CupMode mode, std::uint64_t cap)
{
    if (mode == CupMode::ExhaustiveOracle) {
        const std::uint64_t limit = cap ? cap : kDefaultOracleCap;
        if (p.dimension() > limit)
            throw DimensionCapExceeded("exhaustive cup-length oracle: dimension " + std::to_string(p.dimension()) +
                                       " exceeds cap " + std::to_string(limit));
        return exhaustive_oracle(p);
    }
    const std::uint64_t limit = cap ? cap : kDefaultSearchCap;
    if (p.dimension() > limit)
        throw WorkCapExceeded("cup-length search: dimension " + std::to_string(p.dimension()) + " exceeds cap " +
                              std::to_string(limit));
    return GeneratorSearch(p).run();
}

} // namespace topoinv
