#include "topoinv/invariants.hpp"

#include "topoinv/errors.hpp"
#include "topoinv/parity.hpp"

namespace topoinv {

RankResult RankResult::exact(int v, std::string label, std::optional<int> n)
{
    RankResult r;
    r.kind = RankKind::Exact;
    r.lo = r.hi = v;
    r.case_label = std::move(label);
    r.n_index = n;
    return r;
}

RankResult RankResult::interval(int lo, int hi, std::string label, std::optional<int> n)
{
    RankResult r;
    r.kind = RankKind::Interval;
    r.lo = lo;
    r.hi = hi;
    r.case_label = std::move(label);
    r.n_index = n;
    return r;
}

RankResult RankResult::uncovered(std::string reason, std::string label)
{
    RankResult r;
    r.kind = RankKind::Uncovered;
    r.reason = std::move(reason);
    r.case_label = std::move(label);
    return r;
}

namespace {

std::string field_name(Field f)
{
    switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
    }
    return "?";
}

std::string params(int n, int k)
{
    return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
}

bool is_power_of_two(int v)
{
    return v > 0 && (v & (v - 1)) == 0;
}

} // namespace

RankResult ucharrank_stiefel(Field f, int n, int k)
{
    if (f == Field::R) {
        if (!(1 <= k && k < n))
            throw InvalidParameters("real Stiefel manifold needs 1 <= k < n " + params(n, k));
        if (k == 1)
            return RankResult::uncovered("real Stiefel table requires k > 1");
        const int m = n - k;
        switch (m) {
        case 1:
            if (n == 3)
                return RankResult::uncovered("RV_{3,2} is not covered by the Stiefel table");
            return RankResult::exact(2, "2.3(a)");
        case 2: return RankResult::exact(2, "2.3(a)");
        case 4:
            if (k == 2)
                return RankResult::exact(4, "2.3(a)");
            // nothing below degree n-k, so the rank is at least n-k-1
            return RankResult::interval(3, 4, "2.3(b)");
        case 8: return RankResult::interval(7, 8, "2.3(c)");
        default: return RankResult::exact(m - 1, "2.3(a)");
        }
    }

    if (!(1 <= k && k <= n))
        throw InvalidParameters(field_name(f) + " Stiefel manifold needs 1 <= k <= n " + params(n, k));
    if (k == 1)
        return RankResult::uncovered(field_name(f) + " Stiefel table requires k > 1");
    if (f == Field::C)
        return RankResult::exact(k == n ? 2 : 2 * (n - k), "2.3(d)");
    return RankResult::exact(4 * (n - k) + 2, "2.3(e)");
}

RankResult ucharrank_projective_real(Family family, int n, int k)
{
    int c = 0;
    IndexFamily index_family{};
    if (family == Family::RX) {
        c = 1;
        index_family = IndexFamily::Real;
    } else if (family == Family::FV) {
        c = 2;
        index_family = IndexFamily::Flip;
    } else {
        throw InvalidParameters("ucharrank_projective_real takes RX or FV");
    }
    const SpaceId space{family, n, k};
    validate(space);

    const int N = n_index(index_family, n, k).value;
    const int m = n - c * k;
    const int dim = static_cast<int>(dimension(space));
    auto capped = [&](int lo, int hi, const std::string& label) {
        if (hi > dim)
            return RankResult::interval(lo, dim, label + "+dim-cap", N);
        return RankResult::interval(lo, hi, label, N);
    };

    RankResult result;
    switch (m) {
    case 1: {
        if (N == 2 && family == Family::RX)
            result = RankResult::exact(2, "1.1(b)(1)", N);
        else if (N == 2)
            result = capped(2, dim, "1.1(b)(2)");
        else
            result = RankResult::exact(0, "1.1(b)(3)", N);
        // the congruence form of the N = 2 test, kept as a cross-check
        const bool congruence = family == Family::RX ? (n % 4 == 2 || n % 4 == 3) : (n % 4 == 0 || n % 4 == 2);
        if (congruence != (N == 2))
            result.notes.push_back("congruence condition on n (" + std::string(family == Family::RX ? "2,3" : "0,2") +
                                   " mod 4) disagrees with N=" + std::to_string(N) + "; case chosen by N");
        break;
    }
    case 2:
        if (N == 3)
            result = RankResult::exact(2, "1.1(c)(1)", N);
        else if (N == 4)
            result = capped(1, 4, "1.1(c)(2)");
        else
            result = capped(1, 2, "1.1(c)(1)");
        break;
    case 4:
        if (N == 5)
            result = RankResult::exact(4, "1.1(d)(1)", N);
        else if (N == 6)
            result = capped(3, 6, "1.1(d)(2)");
        else
            result = capped(3, 4, "1.1(d)(1)");
        break;
    case 8:
        if (N == 9)
            result = RankResult::exact(8, "1.1(e)(1)", N);
        else if (N == 10)
            result = capped(7, 10, "1.1(e)(2)");
        else
            result = capped(7, 8, "1.1(e)(1)");
        break;
    default:
        if (N == m + 1) {
            if (m % 2 == 0 || !is_power_of_two(m + 1))
                result = RankResult::exact(m, "1.1(a)(1)", N);
            else
                result = capped(m, dim, "1.1(a)(1)");
        } else {
            result = RankResult::exact(m - 1, "1.1(a)(2)", N);
        }
        break;
    }
    return result;
}

RankResult ucharrank_projective_CH(Field f, int n, int k)
{
    if (f == Field::R)
        throw InvalidParameters("ucharrank_projective_CH takes C or H");
    if (!(1 <= k && k <= n))
        throw InvalidParameters(field_name(f) + " projective Stiefel manifold needs 1 <= k <= n " + params(n, k));
    if (k == n)
        return RankResult::uncovered("projective Stiefel formula requires k < n", "1.2");

    const bool odd = binom_odd(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n - k + 1));
    const int N = n_index(IndexFamily::ComplexOrQuaternionic, n, k).value;
    const int value = f == Field::C ? 2 * (n - k) + (odd ? 2 : 0) : 4 * (n - k) + (odd ? 6 : 2);
    RankResult result = RankResult::exact(value, "1.2", N);

    const SpaceId space{f == Field::C ? Family::CX : Family::HX, n, k};
    const long long dim = dimension(space);
    if (value > dim)
        result.notes.push_back("formula value " + std::to_string(value) + " exceeds the manifold dimension " +
                               std::to_string(dim));
    return result;
}

RankResult ucharrank(const SpaceId& s)
{
    switch (s.family) {
    case Family::RV:
        validate(s);
        return ucharrank_stiefel(Field::R, s.n, s.k);
    case Family::CV:
        validate(s);
        return ucharrank_stiefel(Field::C, s.n, s.k);
    case Family::HV:
        validate(s);
        return ucharrank_stiefel(Field::H, s.n, s.k);
    case Family::RX:
    case Family::FV: return ucharrank_projective_real(s.family, s.n, s.k);
    case Family::CX: return ucharrank_projective_CH(Field::C, s.n, s.k);
    case Family::HX: return ucharrank_projective_CH(Field::H, s.n, s.k);
    }
    throw InvalidParameters("unknown family");
}

int cup_bound_nt(int d, int j, int r_y)
{
    if (r_y < 1 || d < j + 1)
        throw InvalidParameters("cup_bound_nt needs r_y >= 1 and d >= j + 1");
    return 1 + (d - j - 1) / r_y;
}

int cup_bound_korbas(int d, int k, int charrank)
{
    if (k < 1 || charrank > d - 2)
        throw InvalidParameters("cup_bound_korbas needs k >= 1 and charrank <= d - 2");
    return 1 + (d - 1 - charrank) / k;
}

std::optional<NamedBound> cup_bound_line_bundle(const SpaceId& s)
{
    if (!is_valid(s) || s.k <= 1)
        return std::nullopt;
    const int n = s.n, k = s.k;
    const int d = static_cast<int>(dimension(s));
    const bool odd = binom_odd(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n - k + 1));
    const int N = n - k + 1;
    switch (s.family) {
    case Family::RX:
        if (odd)
            return NamedBound{"Theorem 4.2", d - N};
        return std::nullopt;
    case Family::FV: {
        const int lowest = n - 2 * k + 1;
        try {
            if (n_index(IndexFamily::Flip, n, k).value == lowest)
                return NamedBound{"Remark 4.3", d - lowest};
        } catch (const NoIndex&) {
        }
        return std::nullopt;
    }
    case Family::CX:
        if (odd)
            return NamedBound{"Remark 4.3", d - 2 * N + 1};
        return std::nullopt;
    case Family::HX:
        if (odd)
            return NamedBound{"Remark 4.3", d - 4 * N + 1};
        return std::nullopt;
    default: return std::nullopt;
    }
}

CupReport cup_report(const SpaceId& s, std::uint64_t oracle_cap)
{
    const Presentation p = presentation(s);
    CupReport report{s, cup_length(p, CupMode::GeneratorSearch), std::nullopt, {}, {}};
    if (p.dimension() <= oracle_cap)
        report.oracle = cup_length(p, CupMode::ExhaustiveOracle, oracle_cap).value;
    if (auto bound = cup_bound_line_bundle(s)) {
        report.bounds.push_back(*bound);
        if (bound->value < report.exact.value)
            report.violations.push_back(bound->name);
    }
    return report;
}

} // namespace topoinv
