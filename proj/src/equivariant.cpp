#include "topoinv/equivariant.hpp"

#include <charconv>

#include "topoinv/errors.hpp"

namespace topoinv {

IndexIdeal index_sphere(int n)
{
    if (n < 1)
        throw InvalidParameters("sphere S^{4n-1} needs n >= 1");
    return {4, n};
}

IndexIdeal index_stiefel_mod2(int n, int k)
{
    return {4, n_index(IndexFamily::ComplexOrQuaternionic, n, k).value};
}

IntegralIndexComponent index_stiefel_integral_component(int n, int k)
{
    if (!(1 <= k && k <= n))
        throw InvalidParameters("quaternionic Stiefel manifold needs 1 <= k <= n");
    const int lowest = n - k + 1;
    return {4 * lowest, binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(lowest))};
}

bool ideal_contains(const IndexIdeal& a, const IndexIdeal& b)
{
    if (a.generator_degree != b.generator_degree)
        throw DegreeMismatch("ideals live in polynomial rings with generators of degree " +
                             std::to_string(a.generator_degree) + " and " + std::to_string(b.generator_degree));
    return a.exponent <= b.exponent;
}

namespace {

int parse_positive(std::string_view text)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw InvalidParameters("cannot parse integer from '" + std::string(text) + "'");
    return v;
}

StiefelH as_stiefel(const GSpace& g)
{
    if (auto v = std::get_if<StiefelH>(&g))
        return *v;
    return {std::get<SymplecticGroup>(g).n, std::get<SymplecticGroup>(g).n};
}

} // namespace

GSpace parse_gspace(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw InvalidParameters("G-space spec '" + std::string(text) + "' has no ':'");
    auto head = text.substr(0, colon);
    auto body = text.substr(colon + 1);
    if (head == "S4n-1")
        return Sphere{parse_positive(body)};
    if (head == "Sp")
        return SymplecticGroup{parse_positive(body)};
    if (head == "HV") {
        auto comma = body.find(',');
        if (comma == std::string_view::npos)
            throw InvalidParameters("HV spec needs n,k");
        return StiefelH{parse_positive(body.substr(0, comma)), parse_positive(body.substr(comma + 1))};
    }
    throw InvalidParameters("unknown G-space '" + std::string(head) + "' (expected S4n-1, HV or Sp)");
}

std::string to_string(const GSpace& g)
{
    if (auto s = std::get_if<Sphere>(&g))
        return "S4n-1:" + std::to_string(s->n);
    if (auto v = std::get_if<StiefelH>(&g))
        return "HV:" + std::to_string(v->n) + "," + std::to_string(v->k);
    return "Sp:" + std::to_string(std::get<SymplecticGroup>(g).n);
}

void validate(const GSpace& g)
{
    if (auto s = std::get_if<Sphere>(&g); s && s->n < 1)
        throw InvalidParameters("sphere S^{4n-1} needs n >= 1");
    if (auto v = std::get_if<StiefelH>(&g); v && !(1 <= v->k && v->k <= v->n))
        throw InvalidParameters("HV_{n,k} needs 1 <= k <= n");
    if (auto p = std::get_if<SymplecticGroup>(&g); p && p->n < 1)
        throw InvalidParameters("Sp(n) needs n >= 1");
}

IndexIdeal index_of(const GSpace& g)
{
    validate(g);
    if (auto s = std::get_if<Sphere>(&g))
        return index_sphere(s->n);
    auto v = as_stiefel(g);
    return index_stiefel_mod2(v.n, v.k);
}

int integral_index_exponent(const GSpace& g)
{
    validate(g);
    if (auto s = std::get_if<Sphere>(&g))
        return s->n;
    auto v = as_stiefel(g);
    return index_stiefel_integral_component(v.n, v.k).degree / 4;
}

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Possible: return "possible";
    case Verdict::NotRuledOut: return "not-ruled-out";
    case Verdict::Impossible: return "impossible";
    }
    return "?";
}

FeasibilityVerdict feasibility(const GSpace& source, const GSpace& target)
{
    validate(source);
    validate(target);

    const bool src_sphere = std::holds_alternative<Sphere>(source);
    const bool dst_sphere = std::holds_alternative<Sphere>(target);

    if (src_sphere && dst_sphere) {
        const int n = std::get<Sphere>(source).n, m = std::get<Sphere>(target).n;
        if (n <= m)
            return {Verdict::Possible, "5.3", ""};
        return {Verdict::Impossible, "5.3", "n>m"};
    }

    if (std::holds_alternative<SymplecticGroup>(source) && std::holds_alternative<SymplecticGroup>(target)) {
        const int n = std::get<SymplecticGroup>(source).n, m = std::get<SymplecticGroup>(target).n;
        if (m % n == 0)
            return {Verdict::Possible, "1.3(b)", ""};
        return {Verdict::Impossible, "1.3(b)", "n does not divide m"};
    }

    if (src_sphere) {
        const int n = std::get<Sphere>(source).n;
        const auto [m, l] = as_stiefel(target);
        if (n > m - l + 1)
            return {Verdict::Impossible, "1.3(c)", "n>m-l+1"};
        return {Verdict::NotRuledOut, "1.3(c)", ""};
    }

    if (dst_sphere) {
        const auto [n, k] = as_stiefel(source);
        const int m = std::get<Sphere>(target).n;
        if (m < n - k + 1)
            return {Verdict::Impossible, "1.3(d)", "m<n-k+1"};
        return {Verdict::NotRuledOut, "1.3(d)", ""};
    }

    const auto [n, k] = as_stiefel(source);
    const auto [m, l] = as_stiefel(target);
    if (n - k > m - l)
        return {Verdict::Impossible, "1.3(a)", "n-k>m-l"};
    if (n - k == m - l && !binom_divides(n, k, m, l))
        return {Verdict::Impossible, "1.3(a)", "binom(n,n-k+1) does not divide binom(m,m-l+1)"};
    return {Verdict::NotRuledOut, "1.3(a)", ""};
}

} // namespace topoinv
