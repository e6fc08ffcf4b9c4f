#include "topoinv/verify.hpp"

#include <bit>
#include <functional>
#include <map>
#include <random>

#include "topoinv/equivariant.hpp"
#include "topoinv/errors.hpp"
#include "topoinv/gralg.hpp"
#include "topoinv/invariants.hpp"
#include "topoinv/parity.hpp"
#include "topoinv/spaces.hpp"

namespace topoinv {

namespace {

const std::vector<Family> kAllFamilies{Family::RV, Family::CV, Family::HV, Family::RX,
                                       Family::FV, Family::CX, Family::HX};
const std::vector<Family> kProjective{Family::RX, Family::FV, Family::CX, Family::HX};

std::vector<SpaceId> grid(const std::vector<Family>& families, int max_n)
{
    return catalog(families, {1, max_n}, {1, max_n}).spaces;
}

// Runs check(i) in parallel, then merges per-item results in index order.
struct ItemResult {
    std::size_t checks = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

template <typename Check>
void run_items(SuiteResult& out, std::size_t count, unsigned jobs, Check check)
{
    std::vector<ItemResult> items(count);
    parallel_for(count, jobs, [&](std::size_t i) { check(i, items[i]); });
    for (auto& it : items) {
        out.checks += it.checks;
        out.skipped += it.skipped;
        out.failures.insert(out.failures.end(), it.failures.begin(), it.failures.end());
        out.expected_warnings.insert(out.expected_warnings.end(), it.warnings.begin(), it.warnings.end());
    }
}

void parity_suite(SuiteResult& out, const VerifyOptions& opt)
{
    run_items(out, 65, opt.jobs, [](std::size_t n, ItemResult& r) {
        const auto row = parity_row(n);
        for (std::uint64_t j = 0; j <= n; ++j) {
            ++r.checks;
            const bool big = binomial(n, j) % 2 == 1;
            if (big != binom_odd(n, j))
                r.failures.push_back("Lucas parity disagrees with exact binomial at (" + std::to_string(n) + "," +
                                     std::to_string(j) + ")");
        }
        ++r.checks;
        if (row.ones() != (std::size_t(1) << std::popcount(n)))
            r.failures.push_back("parity row " + std::to_string(n) + " has wrong number of odd entries");
    });
}

void palindrome_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const auto spaces = grid(kAllFamilies, opt.max_n);
    run_items(out, spaces.size(), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const auto& s = spaces[i];
        try {
            const auto p = presentation(s);
            const auto series = poincare(p);
            ++r.checks;
            if (p.top_degree() != dimension(s))
                r.failures.push_back(to_string(s) + ": top degree " + std::to_string(p.top_degree()) +
                                     " != dimension " + std::to_string(dimension(s)));
            ++r.checks;
            for (std::size_t d = 0; d < series.size(); ++d)
                if (series[d] != series[series.size() - 1 - d]) {
                    r.failures.push_back(to_string(s) + ": Poincare series is not palindromic");
                    break;
                }
            ++r.checks;
            std::uint64_t total = 0;
            for (auto c : series)
                total += c;
            if (total != p.dimension())
                r.failures.push_back(to_string(s) + ": series total differs from basis size");
        } catch (const NoIndex& e) {
            ++r.skipped;
            r.warnings.push_back(to_string(s) + ": " + e.what());
        }
    });
}

void spectral_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const auto spaces = grid(kProjective, opt.max_n);
    run_items(out, spaces.size(), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const auto& s = spaces[i];
        try {
            const auto rep = serre_verify(s, static_cast<int>(dimension(s)), opt.work_cap);
            ++r.checks;
            if (!rep.match)
                r.failures.push_back(to_string(s) + ": spectral sequence E_infinity differs from the presentation" +
                                     (rep.consistent ? "" : " (differential not square-zero)"));
        } catch (const WorkCapExceeded&) {
            ++r.skipped;
        } catch (const NoIndex& e) {
            ++r.skipped;
            r.warnings.push_back(to_string(s) + ": " + e.what());
        }
    });
}

Element random_element(const Presentation& p, std::mt19937_64& rng, bool homogeneous)
{
    std::uniform_int_distribution<std::uint64_t> pick(0, p.dimension() - 1);
    const Monomial seed = p.monomial_at(pick(rng));
    Element e(p);
    e.toggle(seed);
    const int terms = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int t = 0; t < terms; ++t) {
        const Monomial m = p.monomial_at(pick(rng));
        if (m != seed && (!homogeneous || p.degree(m) == p.degree(seed)))
            e.toggle(m);
    }
    return e;
}

void steenrod_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const auto spaces = grid({Family::RV}, opt.max_n);
    run_items(out, spaces.size(), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const auto& s = spaces[i];
        const auto p = presentation(s);
        const std::string name = to_string(s);
        std::mt19937_64 rng(0x5eed + i);

        for (const auto& g : p.gens()) {
            ++r.checks;
            const auto z = Element::generator(p, g.label);
            if (steenrod_sq(p, g.degree, z) != mul(p, z, z))
                r.failures.push_back(name + ": Sq^q z_q differs from the squaring rule for z" +
                                     std::to_string(g.label));
        }
        for (int trial = 0; trial < 25; ++trial) {
            const auto a = random_element(p, rng, true);
            const auto b = random_element(p, rng, false);
            const int d = *a.degree();
            r.checks += 4;
            if (steenrod_sq(p, 0, b) != b)
                r.failures.push_back(name + ": Sq^0 is not the identity");
            if (!steenrod_sq(p, d + 1 + trial % 3, a).is_zero())
                r.failures.push_back(name + ": Sq^i a != 0 for i > deg a");
            if (steenrod_sq(p, d, a) != mul(p, a, a))
                r.failures.push_back(name + ": Sq^{deg a} a != a^2");
            const int total = std::uniform_int_distribution<int>(0, p.top_degree())(rng);
            Element cartan(p);
            for (int t = 0; t <= total; ++t)
                cartan += mul(p, steenrod_sq(p, t, a), steenrod_sq(p, total - t, b));
            if (steenrod_sq(p, total, mul(p, a, b)) != cartan)
                r.failures.push_back(name + ": Cartan formula fails for Sq^" + std::to_string(total));
        }
    });
}

void cup_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const auto spaces = grid(kAllFamilies, opt.max_n);
    run_items(out, spaces.size(), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const auto& s = spaces[i];
        const std::string name = to_string(s);
        try {
            const auto p = presentation(s);
            if (p.dimension() > kReportOracleCap) {
                ++r.skipped;
                return;
            }
            const auto rep = cup_report(s);
            ++r.checks;
            if (!rep.oracle || *rep.oracle != rep.exact.value)
                r.failures.push_back(name + ": generator search and exhaustive oracle disagree");
            if (is_projective(s.family)) {
                ++r.checks;
                if (rep.exact.value < p.order() - 1 + static_cast<int>(p.num_gens()))
                    r.failures.push_back(name + ": cup length below the top-monomial factor count");
            }
            for (const auto& b : rep.bounds)
                if (b.value < rep.exact.value)
                    r.warnings.push_back(name + " " + b.name + ": bound " + std::to_string(b.value) + " < exact " +
                                         std::to_string(rep.exact.value));
        } catch (const NoIndex& e) {
            ++r.skipped;
            r.warnings.push_back(name + ": " + e.what());
        }
    });
}

int n_index_big(IndexFamily f, int n, int k)
{
    const int lo = f == IndexFamily::Flip ? n - 2 * k + 1 : n - k + 1;
    for (int j = lo; j <= n; ++j) {
        const BigInt b = f == IndexFamily::Flip ? binomial(k + j - 1, j) : binomial(n, j);
        if (b % 2 == 1)
            return j;
    }
    return -1;
}

void ranks_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const auto spaces = grid(kAllFamilies, opt.max_n);
    run_items(out, spaces.size(), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const auto& s = spaces[i];
        const std::string name = to_string(s);
        RankResult rank;
        try {
            rank = ucharrank(s);
        } catch (const NoIndex& e) {
            ++r.skipped;
            r.warnings.push_back(name + ": " + e.what());
            return;
        }
        for (const auto& note : rank.notes)
            r.warnings.push_back(name + ": " + note);
        if (rank.kind == RankKind::Uncovered)
            return;
        const long long dim = dimension(s);
        ++r.checks;
        if (rank.lo > rank.hi)
            r.failures.push_back(name + ": interval with lo > hi");
        ++r.checks;
        if (rank.hi > dim && !((s.family == Family::CX || s.family == Family::HX) && s.k == 1))
            r.failures.push_back(name + ": rank exceeds the manifold dimension");

        if (s.family == Family::RX || s.family == Family::FV) {
            const auto fam = s.family == Family::RX ? IndexFamily::Real : IndexFamily::Flip;
            ++r.checks;
            if (n_index_big(fam, s.n, s.k) != rank.n_index.value_or(-1))
                r.failures.push_back(name + ": N-index differs between Lucas and exact binomials");
            const int m = s.n - (s.family == Family::RX ? 1 : 2) * s.k;
            if (s.family == Family::RX && m != 1 && m != 2 && m != 4 && m != 8 && *rank.n_index > m + 1) {
                ++r.checks;
                const auto st = ucharrank_stiefel(Field::R, s.n, s.k);
                if (st.kind != RankKind::Exact || st.lo != rank.lo)
                    r.failures.push_back(name + ": does not coincide with the Stiefel manifold value");
            }
        }
        if ((s.family == Family::CX || s.family == Family::HX) && s.k >= 2) {
            const Field f = s.family == Family::CX ? Field::C : Field::H;
            const auto st = ucharrank_stiefel(f, s.n, s.k);
            const bool odd = binomial(s.n, s.n - s.k + 1) % 2 == 1;
            const int bump = odd ? (f == Field::C ? 2 : 4) : 0;
            ++r.checks;
            if (rank.lo != st.lo + bump)
                r.failures.push_back(name + ": projective value is not the Stiefel value plus the parity bump");
        }
    });
}

void equivariant_suite(SuiteResult& out, const VerifyOptions& opt)
{
    const int top = std::max(opt.max_n, 1);
    run_items(out, static_cast<std::size_t>(top), opt.jobs, [&](std::size_t i, ItemResult& r) {
        const int n = static_cast<int>(i) + 1;
        ++r.checks;
        if (index_stiefel_mod2(n, 1) != index_sphere(n))
            r.failures.push_back("index of HV_{n,1} differs from the sphere index at n=" + std::to_string(n));
        for (int m = 1; m <= top; ++m) {
            r.checks += 2;
            const bool sp = feasibility(SymplecticGroup{n}, SymplecticGroup{m}).status == Verdict::Possible;
            if (sp != (m % n == 0))
                r.failures.push_back("Sp verdict wrong for n=" + std::to_string(n) + ", m=" + std::to_string(m));
            const bool sph = feasibility(Sphere{n}, Sphere{m}).status == Verdict::Possible;
            if (sph != (n <= m))
                r.failures.push_back("sphere verdict wrong for n=" + std::to_string(n) + ", m=" + std::to_string(m));
        }
        for (int k = 1; k <= n; ++k) {
            ++r.checks;
            if (feasibility(StiefelH{n, k}, StiefelH{n, k}).status == Verdict::Impossible)
                r.failures.push_back("identity map of HV_{n,k} ruled out");
        }
    });
}

const std::map<std::string, std::function<void(SuiteResult&, const VerifyOptions&)>>& suites()
{
    static const std::map<std::string, std::function<void(SuiteResult&, const VerifyOptions&)>> table{
        {"parity", parity_suite},   {"palindrome", palindrome_suite}, {"spectral", spectral_suite},
        {"steenrod", steenrod_suite}, {"cup", cup_suite},             {"ranks", ranks_suite},
        {"equivariant", equivariant_suite},
    };
    return table;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"parity", "palindrome", "spectral", "steenrod",
                                                "cup",    "ranks",      "equivariant"};
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options)
{
    auto it = suites().find(name);
    if (it == suites().end())
        throw InvalidParameters("unknown verification suite '" + name + "'");
    SuiteResult result;
    result.name = name;
    it->second(result, options);
    return result;
}

} // namespace topoinv
