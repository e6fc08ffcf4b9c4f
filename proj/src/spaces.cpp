#include "topoinv/spaces.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "topoinv/errors.hpp"
#include "topoinv/f2.hpp"
#include "topoinv/parity.hpp"

namespace topoinv {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyNames{{
    {Family::RV, "RV"},
    {Family::CV, "CV"},
    {Family::HV, "HV"},
    {Family::RX, "RX"},
    {Family::FV, "FV"},
    {Family::CX, "CX"},
    {Family::HX, "HX"},
}};

int parse_int(std::string_view text, std::string_view what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw InvalidParameters("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return value;
}

} // namespace

std::string_view to_string(Family f) noexcept
{
    for (auto [fam, name] : kFamilyNames)
        if (fam == f)
            return name;
    return "?";
}

Family parse_family(std::string_view text)
{
    for (auto [fam, name] : kFamilyNames)
        if (name == text)
            return fam;
    throw InvalidParameters("unknown family '" + std::string(text) + "' (expected RV, CV, HV, RX, FV, CX or HX)");
}

SpaceId parse_space(std::string_view text)
{
    auto colon = text.find(':');
    auto comma = text.find(',');
    if (colon == std::string_view::npos || comma == std::string_view::npos || comma < colon)
        throw InvalidParameters("space spec '" + std::string(text) + "' is not of the form FAMILY:n,k");
    return {parse_family(text.substr(0, colon)), parse_int(text.substr(colon + 1, comma - colon - 1), "n"),
            parse_int(text.substr(comma + 1), "k")};
}

std::string to_string(const SpaceId& s)
{
    return std::string(to_string(s.family)) + ":" + std::to_string(s.n) + "," + std::to_string(s.k);
}

bool is_valid(const SpaceId& s) noexcept
{
    const int n = s.n, k = s.k;
    switch (s.family) {
    case Family::RV: return 1 <= k && k < n;
    case Family::CV:
    case Family::HV: return 1 <= k && k <= n;
    case Family::RX: return 1 < k && k < n;
    case Family::FV: return k >= 1 && 2 * k < n;
    case Family::CX:
    case Family::HX: return 1 <= k && k < n;
    }
    return false;
}

void validate(const SpaceId& s)
{
    if (is_valid(s))
        return;
    std::string rule;
    switch (s.family) {
    case Family::RV: rule = "1 <= k < n"; break;
    case Family::CV:
    case Family::HV: rule = "1 <= k <= n"; break;
    case Family::RX: rule = "1 < k < n"; break;
    case Family::FV: rule = "k >= 1 and 2k < n"; break;
    case Family::CX:
    case Family::HX: rule = "1 <= k < n"; break;
    }
    throw InvalidParameters(to_string(s) + " is invalid: " + std::string(to_string(s.family)) + " requires " + rule);
}

bool is_projective(Family f) noexcept
{
    return f == Family::RX || f == Family::FV || f == Family::CX || f == Family::HX;
}

int base_degree(Family f)
{
    switch (f) {
    case Family::RX:
    case Family::FV: return 1;
    case Family::CX: return 2;
    case Family::HX: return 4;
    default: break;
    }
    throw InvalidParameters("family " + std::string(to_string(f)) + " is not a projective quotient");
}

namespace {

// Borel's simple system V(z_lo, ..., z_hi) with z_j^2 = z_2j inside the
// range [.., bound] and 0 beyond it; `omitted` is dropped and squares that
// would land on it become undetermined.
std::vector<SimpleGenerator> real_simple_system(int lo, int hi, int bound, int omitted)
{
    std::vector<SimpleGenerator> gens;
    for (int j = lo; j <= hi; ++j) {
        if (j == omitted)
            continue;
        SquareRule sq = SquareRule::zero();
        if (2 * j <= bound)
            sq = 2 * j == omitted ? SquareRule::undetermined() : SquareRule::maps_to(2 * j);
        gens.push_back({j, j, sq});
    }
    return gens;
}

std::vector<SimpleGenerator> exterior_system(int lo, int hi, int scale, int omitted)
{
    std::vector<SimpleGenerator> gens;
    for (int j = lo; j <= hi; ++j)
        if (j != omitted)
            gens.push_back({j, scale * j - 1, SquareRule::zero()});
    return gens;
}

} // namespace

Presentation presentation(const SpaceId& s)
{
    validate(s);
    const int n = s.n, k = s.k;
    const std::string name = to_string(s);
    switch (s.family) {
    case Family::RV:
        return Presentation(std::nullopt, real_simple_system(n - k, n - 1, n - 1, 0), n - 1,
                            PresentationKind::RealStiefel, name, "z");
    case Family::CV:
        return Presentation(std::nullopt, exterior_system(n - k + 1, n, 2, 0), n - 1, PresentationKind::ComplexStiefel,
                            name, "z");
    case Family::HV:
        return Presentation(std::nullopt, exterior_system(n - k + 1, n, 4, 0), n - 1,
                            PresentationKind::QuaternionicStiefel, name, "z");
    case Family::RX: {
        const int order = n_index(IndexFamily::Real, n, k).value;
        return Presentation(Truncation{1, order}, real_simple_system(n - k, n - 1, n - 1, order - 1), n - 1,
                            PresentationKind::Projective, name, "y");
    }
    case Family::FV: {
        const int order = n_index(IndexFamily::Flip, n, k).value;
        return Presentation(Truncation{1, order}, real_simple_system(n - 2 * k, n - 1, n - 1, order - 1), n - 1,
                            PresentationKind::Projective, name, "y");
    }
    case Family::CX: {
        const int order = n_index(IndexFamily::ComplexOrQuaternionic, n, k).value;
        return Presentation(Truncation{2, order}, exterior_system(n - k + 1, n, 2, order), n - 1,
                            PresentationKind::Projective, name, "y");
    }
    case Family::HX: {
        const int order = n_index(IndexFamily::ComplexOrQuaternionic, n, k).value;
        return Presentation(Truncation{4, order}, exterior_system(n - k + 1, n, 4, order), n - 1,
                            PresentationKind::Projective, name, "y");
    }
    }
    throw InvalidParameters("unknown family");
}

long long dimension(const SpaceId& s)
{
    validate(s);
    const long long n = s.n, k = s.k;
    switch (s.family) {
    case Family::RV:
    case Family::RX: return n * k - k * (k + 1) / 2;
    case Family::FV: return 2 * n * k - k * (2 * k + 1);
    case Family::CV: return 2 * n * k - k * k;
    case Family::CX: return 2 * n * k - k * k - 1;
    case Family::HV: return 4 * n * k - 2 * k * k + k;
    case Family::HX: return 4 * n * k - 2 * k * k + k - 3;
    }
    return 0;
}

IntRange parse_range(std::string_view text)
{
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        int v = parse_int(text, "range");
        return {v, v};
    }
    return {parse_int(text.substr(0, dots), "range start"), parse_int(text.substr(dots + 2), "range end")};
}

Catalog catalog(const std::vector<Family>& families, IntRange n, IntRange k)
{
    Catalog out;
    for (Family f : families)
        for (int nn = n.lo; nn <= n.hi; ++nn)
            for (int kk = k.lo; kk <= k.hi; ++kk) {
                SpaceId s{f, nn, kk};
                if (is_valid(s))
                    out.spaces.push_back(s);
                else
                    ++out.skipped;
            }
    return out;
}

// ---------------------------------------------------------------------------
// Spectral sequence simulation

namespace {

struct FiberGenerator {
    int degree;
    int target_power;  // transgresses to x^target_power
    bool coefficient;  // odd transgression coefficient
};

struct Basis {
    // E_2 basis in one total degree: (base power, fiber monomial)
    std::vector<std::pair<int, std::uint64_t>> elems;
    std::vector<std::pair<std::pair<int, std::uint64_t>, std::size_t>> lookup;  // sorted for binary search

    std::size_t index(int p, std::uint64_t f) const
    {
        auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(std::make_pair(p, f), std::size_t(0)));
        return it->second;
    }
};

SpaceId fiber_of(const SpaceId& s)
{
    switch (s.family) {
    case Family::RX: return {Family::RV, s.n, s.k};
    case Family::FV: return {Family::RV, s.n, 2 * s.k};
    case Family::CX: return {Family::CV, s.n, s.k};
    case Family::HX: return {Family::HV, s.n, s.k};
    default: break;
    }
    throw InvalidParameters("spectral-sequence verification needs a projective family, got " + to_string(s));
}

std::vector<FiberGenerator> transgressions(const SpaceId& s, const Presentation& fiber)
{
    std::vector<FiberGenerator> out;
    const auto n = static_cast<std::uint64_t>(s.n);
    const auto k = static_cast<std::uint64_t>(s.k);
    for (const auto& g : fiber.gens()) {
        const auto j = static_cast<std::uint64_t>(g.label);
        switch (s.family) {
        case Family::RX:
            // z_j -> w_{j+1}(n gamma) = binom(n, j+1) x^{j+1}
            out.push_back({g.degree, g.label + 1, binom_odd(n, j + 1)});
            break;
        case Family::FV:
            // coefficient of x^{j+1} is binom(k + (j+1) - 1, j+1)
            out.push_back({g.degree, g.label + 1, binom_odd(k + j, j + 1)});
            break;
        case Family::CX:
        case Family::HX:
            out.push_back({g.degree, g.label, binom_odd(n, j)});
            break;
        default: break;
        }
    }
    return out;
}

} // namespace

SSReport serre_verify(const SpaceId& s, int window, std::uint64_t cap)
{
    validate(s);
    if (window < 0)
        throw InvalidParameters("window must be non-negative");
    const SpaceId fiber_id = fiber_of(s);
    const Presentation fiber = presentation(fiber_id);
    const auto gens = transgressions(s, fiber);
    const int b = base_degree(s.family);
    const std::uint64_t limit = cap ? cap : kDefaultSpectralCap;

    // One degree beyond the window so that kernels in the top reported
    // degree see their targets.
    const int inner = window + 1;
    const int max_power = inner / b;

    std::vector<Basis> basis(static_cast<std::size_t>(inner) + 1);
    std::uint64_t total = 0;
    const std::uint64_t fiber_dim = fiber.dimension();
    for (std::uint64_t f = 0; f < fiber_dim; ++f) {
        const int fd = fiber.degree(fiber.monomial_at(f));
        for (int p = 0; p <= max_power && p * b + fd <= inner; ++p) {
            auto& B = basis[static_cast<std::size_t>(p * b + fd)];
            B.lookup.push_back({{p, f}, B.elems.size()});
            B.elems.push_back({p, f});
            if (++total > limit)
                throw WorkCapExceeded("spectral sequence for " + to_string(s) + " on window " +
                                      std::to_string(window) + " exceeds " + std::to_string(limit) +
                                      " basis elements");
        }
    }
    for (auto& B : basis)
        std::sort(B.lookup.begin(), B.lookup.end());

    // E_r in degree t is span(cycles[t]) modulo boundaries[t], with cycles[t]
    // a complement of boundaries[t] inside Z_r.
    std::vector<f2::Subspace> boundaries;
    std::vector<std::vector<f2::BitVec>> cycles(basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        boundaries.emplace_back(basis[t].elems.size());
        for (std::size_t i = 0; i < basis[t].elems.size(); ++i) {
            f2::BitVec v(basis[t].elems.size());
            v.set(i);
            cycles[t].push_back(std::move(v));
        }
    }

    SSReport report;
    report.space = s;
    report.window = window;

    for (int r = 2; r <= inner; ++r) {
        std::uint64_t active = 0;  // fiber positions transgressing on this page
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (gens[g].coefficient && gens[g].target_power * b == r && gens[g].degree == r - 1)
                active |= std::uint64_t(1) << g;
        if (!active)
            continue;
        const int shift = r / b;

        // d_r on the cycle representatives of each degree
        std::vector<std::vector<f2::BitVec>> kernels(basis.size());
        std::vector<std::vector<f2::BitVec>> images(basis.size());
        bool nonzero = false;
        for (int t = 0; t + 1 <= inner; ++t) {
            const auto& src = basis[static_cast<std::size_t>(t)];
            const auto& dst = basis[static_cast<std::size_t>(t + 1)];
            // pairs (image mod boundaries, source combination), eliminated jointly
            std::vector<std::pair<f2::BitVec, f2::BitVec>> rows;
            for (const auto& c : cycles[static_cast<std::size_t>(t)]) {
                f2::BitVec img(dst.elems.size());
                for (std::size_t i = 0; i < src.elems.size(); ++i) {
                    if (!c.get(i))
                        continue;
                    auto [p, f] = src.elems[i];
                    for (std::uint64_t bits = fiber.monomial_at(f).gens & active; bits; bits &= bits - 1) {
                        const std::uint64_t rest = fiber.monomial_at(f).gens & ~(bits & -bits);
                        img.flip(dst.index(p + shift, fiber.index_of(Monomial{0, rest})));
                    }
                }
                boundaries[static_cast<std::size_t>(t + 1)].reduce(img);
                rows.emplace_back(std::move(img), c);
            }
            // Gaussian elimination on the image halves
            std::vector<int> pivot_owner(dst.elems.size(), -1);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                auto& [img, srcv] = rows[i];
                for (std::size_t bit = 0; bit < img.size(); ++bit) {
                    if (!img.get(bit) || pivot_owner[bit] < 0)
                        continue;
                    const auto& other = rows[static_cast<std::size_t>(pivot_owner[bit])];
                    img ^= other.first;
                    srcv ^= other.second;
                }
                if (auto piv = img.pivot()) {
                    pivot_owner[*piv] = static_cast<int>(i);
                    images[static_cast<std::size_t>(t + 1)].push_back(img);
                    nonzero = true;
                } else {
                    kernels[static_cast<std::size_t>(t)].push_back(srcv);
                }
            }
        }
        if (nonzero && report.first_nonzero_differential_page == 0)
            report.first_nonzero_differential_page = r;

        // E_{r+1} = ker d_r / im d_r
        for (int t = 0; t + 1 <= inner; ++t) {
            const auto ut = static_cast<std::size_t>(t);
            f2::Subspace z = boundaries[ut];
            for (const auto& v : kernels[ut])
                z.insert(v);
            for (const auto& v : images[ut]) {
                if (!z.contains(v))
                    report.consistent = false;
                boundaries[ut].insert(v);
            }
            std::vector<f2::BitVec> complement;
            f2::Subspace span = boundaries[ut];
            for (const auto& v : kernels[ut])
                if (span.insert(v))
                    complement.push_back(v);
            cycles[ut] = std::move(complement);
        }
        // the top inner degree only receives boundaries
        for (const auto& v : images[static_cast<std::size_t>(inner)]) {
            boundaries[static_cast<std::size_t>(inner)].insert(v);
        }
        {
            std::vector<f2::BitVec> complement;
            f2::Subspace span = boundaries[static_cast<std::size_t>(inner)];
            for (const auto& v : cycles[static_cast<std::size_t>(inner)])
                if (span.insert(v))
                    complement.push_back(v);
            cycles[static_cast<std::size_t>(inner)] = std::move(complement);
        }
    }

    report.e_infinity_series.assign(static_cast<std::size_t>(window) + 1, 0);
    for (int t = 0; t <= window; ++t)
        report.e_infinity_series[static_cast<std::size_t>(t)] = cycles[static_cast<std::size_t>(t)].size();

    auto series = poincare(presentation(s));
    series.resize(static_cast<std::size_t>(window) + 1, 0);
    report.presentation_series = std::move(series);
    report.match = report.consistent && report.e_infinity_series == report.presentation_series;
    return report;
}

} // namespace topoinv
