#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "topoinv/cli.hpp"
#include "topoinv/equivariant.hpp"
#include "topoinv/errors.hpp"
#include "topoinv/gralg.hpp"
#include "topoinv/invariants.hpp"
#include "topoinv/parity.hpp"
#include "topoinv/spaces.hpp"

using namespace topoinv;

namespace {

// Prints one PASS/FAIL line per acceptance criterion when it goes out of scope.
class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}
    ~Criterion()
    {
        const bool ok = finished_ && failures_ == 0;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id_ << ": " << title_;
        if (!ok)
            std::cout << " (" << failures_ << " failed checks" << (finished_ ? "" : ", aborted") << ")";
        std::cout << '\n';
    }

    void check(bool cond, const std::string& what)
    {
        CHECK_MESSAGE(cond, what);
        if (!cond)
            ++failures_;
    }
    void done() { finished_ = true; }

private:
    int id_;
    std::string title_;
    int failures_ = 0;
    bool finished_ = false;
};

BigInt factorial_binom(int n, int j)
{
    if (j < 0 || j > n)
        return 0;
    BigInt num = 1, den = 1;
    for (int i = 1; i <= n; ++i)
        num *= i;
    for (int i = 1; i <= j; ++i)
        den *= i;
    for (int i = 1; i <= n - j; ++i)
        den *= i;
    return num / den;
}

bool exact_is(const RankResult& r, int v)
{
    return r.kind == RankKind::Exact && r.lo == v && r.hi == v;
}

bool interval_is(const RankResult& r, int lo, int hi)
{
    return r.kind == RankKind::Interval && r.lo == lo && r.hi == hi;
}

std::string where(const char* fam, int n, int k)
{
    return std::string(fam) + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

const std::vector<Family> kAll{Family::RV, Family::CV, Family::HV, Family::RX, Family::FV, Family::CX, Family::HX};

} // namespace

TEST_CASE("criterion 1: Stiefel table")
{
    Criterion c(1, "Stiefel manifold table over 2<=k<n<=16 (R) and 2<=k<=n<=16 (C, H)");
    for (int n = 3; n <= 16; ++n)
        for (int k = 2; k < n; ++k) {
            const int m = n - k;
            const auto r = ucharrank_stiefel(Field::R, n, k);
            if (m == 1 && n == 3)
                c.check(r.kind == RankKind::Uncovered, where("R", n, k));
            else if (m == 1 || m == 2)
                c.check(exact_is(r, 2), where("R", n, k));
            else if (m == 4)
                c.check(k == 2 ? exact_is(r, 4) : interval_is(r, 3, 4), where("R", n, k));
            else if (m == 8)
                c.check(interval_is(r, 7, 8), where("R", n, k));
            else
                c.check(exact_is(r, m - 1), where("R", n, k));
        }
    for (int n = 2; n <= 16; ++n)
        for (int k = 2; k <= n; ++k) {
            c.check(exact_is(ucharrank_stiefel(Field::C, n, k), k == n ? 2 : 2 * (n - k)), where("C", n, k));
            c.check(exact_is(ucharrank_stiefel(Field::H, n, k), 4 * (n - k) + 2), where("H", n, k));
        }
    c.done();
}

TEST_CASE("criterion 2: complex and quaternionic projective Stiefel manifolds")
{
    Criterion c(2, "projective C/H formula over 1<=k<n<=16 with big-integer parity");
    for (int n = 2; n <= 16; ++n)
        for (int k = 1; k < n; ++k) {
            const bool odd = factorial_binom(n, n - k + 1) % 2 == 1;
            c.check(odd == binom_odd(n, n - k + 1), "parity " + where("", n, k));
            c.check(exact_is(ucharrank_projective_CH(Field::C, n, k), odd ? 2 * (n - k) + 2 : 2 * (n - k)),
                    where("CX", n, k));
            c.check(exact_is(ucharrank_projective_CH(Field::H, n, k), odd ? 4 * (n - k) + 6 : 4 * (n - k) + 2),
                    where("HX", n, k));
        }
    c.done();
}

TEST_CASE("criterion 3: real projective and flip Stiefel case ladder")
{
    Criterion c(3, "case label is a function of (c, n-ck, N); RX_{7,2}, RX_{8,3}, FV_{8,4} spot values");
    std::map<std::tuple<int, int, int>, std::string> label_of;
    for (auto f : {Family::RX, Family::FV})
        for (const auto& s : catalog({f}, {2, 16}, {1, 16}).spaces) {
            const int cc = f == Family::RX ? 1 : 2;
            const auto r = ucharrank(s);
            c.check(r.n_index.has_value(), to_string(s) + " has an N-index");
            if (!r.n_index)
                continue;
            std::string label = r.case_label.substr(0, r.case_label.find("+dim-cap"));
            const auto key = std::make_tuple(cc, s.n - cc * s.k, *r.n_index);
            auto [it, fresh] = label_of.emplace(key, label);
            c.check(fresh || it->second == label, to_string(s) + " label " + label);
        }
    const auto rx72 = ucharrank({Family::RX, 7, 2});
    c.check(exact_is(rx72, 5) && rx72.case_label == "1.1(a)(1)" && rx72.n_index == 6, "RX_{7,2}");
    c.check(exact_is(ucharrank({Family::RX, 8, 3}), 4), "RX_{8,3}");
    const auto fv = ucharrank({Family::FV, 8, 2});
    c.check(interval_is(fv, 3, 6) && fv.case_label == "1.1(d)(2)", "FV_{8,4}");
    c.done();
}

TEST_CASE("criterion 4: ring presentations")
{
    Criterion c(4, "top degree equals dimension and Poincare series is palindromic for n<=12");
    std::size_t count = 0;
    for (const auto& s : catalog(kAll, {1, 12}, {1, 12}).spaces) {
        const auto p = presentation(s);
        const auto series = poincare(p);
        c.check(p.top_degree() == dimension(s), to_string(s) + " top degree");
        c.check(std::equal(series.begin(), series.end(), series.rbegin()), to_string(s) + " palindrome");
        ++count;
    }
    c.check(count > 300, "grid is non-trivial");
    c.done();
}

TEST_CASE("criterion 5: spectral sequence")
{
    Criterion c(5, "Serre spectral sequence matches the presentations for RX/FV/CX/HX with n<=10");
    for (const auto& s : catalog({Family::RX, Family::FV, Family::CX, Family::HX}, {2, 10}, {1, 10}).spaces) {
        const auto r = serre_verify(s, static_cast<int>(dimension(s)));
        c.check(r.match && r.consistent, to_string(s));
    }
    c.check(serre_verify({Family::HX, 5, 2}, 31).first_nonzero_differential_page == 16, "HX_{5,2} first page");
    c.done();
}

TEST_CASE("criterion 6: Steenrod squares")
{
    Criterion c(6, "Sq^0, unstability, top square, Cartan and the squaring rule on RV_{n,k}, n<=16");
    std::mt19937_64 rng(2024);
    std::size_t cartan = 0;
    const auto spaces = catalog({Family::RV}, {2, 16}, {1, 15}).spaces;
    for (const auto& s : spaces) {
        const auto p = presentation(s);
        for (const auto& g : p.gens()) {
            const auto z = Element::generator(p, g.label);
            c.check(steenrod_sq(p, g.degree, z) == mul(p, z, z), to_string(s) + " squaring rule");
        }
        std::uniform_int_distribution<std::uint64_t> pick(0, p.dimension() - 1);
        auto random_element = [&] {
            Element e(p);
            for (int t = 0; t < 3; ++t)
                e.toggle(p.monomial_at(pick(rng)));
            return e;
        };
        const int trials = static_cast<int>(1000 / spaces.size()) + 1;
        for (int t = 0; t < trials; ++t) {
            const Monomial m = p.monomial_at(pick(rng));
            const Element a = Element::monomial(p, m);
            const int d = p.degree(m);
            const Element b = random_element();
            const Element a2 = random_element();
            c.check(steenrod_sq(p, 0, b) == b, to_string(s) + " Sq^0");
            c.check(steenrod_sq(p, d + 1 + t % 4, a).is_zero(), to_string(s) + " unstable");
            c.check(steenrod_sq(p, d, a) == mul(p, a, a), to_string(s) + " top square");
            const int i = std::uniform_int_distribution<int>(0, p.top_degree())(rng);
            Element rhs(p);
            for (int j = 0; j <= i; ++j)
                rhs += mul(p, steenrod_sq(p, j, a2), steenrod_sq(p, i - j, b));
            c.check(steenrod_sq(p, i, mul(p, a2, b)) == rhs, to_string(s) + " Cartan");
            ++cartan;
        }
    }
    c.check(cartan >= 1000, "at least 10^3 Cartan products");
    c.done();
}

TEST_CASE("criterion 7: cup length")
{
    Criterion c(7, "generator search equals exhaustive oracle up to dimension 2^10; bound discrepancies reported");
    std::vector<std::string> violations;
    for (const auto& s : catalog(kAll, {1, 16}, {1, 16}).spaces) {
        Presentation p = presentation(s);
        if (p.dimension() > (1u << 10))
            continue;
        const auto rep = cup_report(s);
        c.check(rep.oracle && *rep.oracle == rep.exact.value, to_string(s) + " search vs oracle");
        for (const auto& b : rep.bounds) {
            const bool listed = std::find(rep.violations.begin(), rep.violations.end(), b.name) != rep.violations.end();
            c.check(listed == (b.value < rep.exact.value), to_string(s) + " violation listing");
        }
        for (const auto& v : rep.violations)
            violations.push_back(to_string(s) + " " + v);
    }
    // documented discrepancy: Theorem 4.2 is exceeded by RX_{n,2} for every odd n
    for (const auto& v : violations) {
        const auto s = parse_space(v.substr(0, v.find(' ')));
        c.check(s.family == Family::RX && s.k == 2 && s.n % 2 == 1 && v.ends_with("Theorem 4.2"), "unexpected " + v);
    }
    c.check(std::find(violations.begin(), violations.end(), "RX:5,2 Theorem 4.2") != violations.end(),
            "RX_{5,2} discrepancy flagged");
    const auto rx = cup_report({Family::RX, 5, 2});
    c.check(rx.exact.value == 4 && rx.bounds.size() == 1 && rx.bounds[0].value == 3, "RX_{5,2} exact 4, bound 3");
    c.check(cup_report({Family::HX, 5, 2}).exact.value == 4, "HX_{5,2} exact 4");
    std::ostringstream out, err;
    run_cli({"verify", "--suite", "cup", "--max-n", "6"}, out, err);
    c.check(out.str().find("RX:5,2 Theorem 4.2") != std::string::npos, "verify lists RX_{5,2} as expected warning");
    c.done();
}

TEST_CASE("criterion 8: equivariant feasibility")
{
    Criterion c(8, "Sp divisibility, sphere order and index checks for n,m<=64");
    for (int n = 1; n <= 64; ++n) {
        for (int m = 1; m <= 64; ++m) {
            c.check((feasibility(SymplecticGroup{n}, SymplecticGroup{m}).status == Verdict::Possible) == (m % n == 0),
                    where("Sp", n, m));
            c.check((feasibility(Sphere{n}, Sphere{m}).status == Verdict::Possible) == (n <= m),
                    where("S", n, m));
        }
        c.check(index_stiefel_mod2(n, 1) == index_sphere(n), "index n=" + std::to_string(n));
    }
    c.check(feasibility(StiefelH{6, 2}, StiefelH{5, 2}).status == Verdict::Impossible, "HV_{6,2} -> HV_{5,2}");
    c.check(feasibility(Sphere{5}, StiefelH{6, 2}).status == Verdict::NotRuledOut, "S^19 -> HV_{6,2}");
    c.done();
}

TEST_CASE("criterion 9: parity oracle")
{
    Criterion c(9, "Lucas criterion against big-integer binomials for 0<=j<=n<=64");
    for (unsigned n = 0; n <= 64; ++n) {
        for (unsigned j = 0; j <= n; ++j)
            c.check(binom_odd(n, j) == (factorial_binom(static_cast<int>(n), static_cast<int>(j)) % 2 == 1),
                    where("", static_cast<int>(n), static_cast<int>(j)));
        c.check(parity_row(n).ones() == (std::size_t(1) << std::popcount(n)), "row " + std::to_string(n));
    }
    c.done();
}

TEST_CASE("criterion 10: determinism")
{
    Criterion c(10, "table ucharrank RX --n 3..16 --k 2..15 --format csv is byte-identical across runs");
    auto capture = [&c] {
        std::string text;
        FILE* pipe = popen(TOPOINV_CLI_PATH " table ucharrank RX --n 3..16 --k 2..15 --format csv", "r");
        c.check(pipe != nullptr, "spawn the command-line tool");
        if (!pipe)
            return text;
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
            text.append(buf, got);
        c.check(pclose(pipe) == 0, "exit status 0");
        return text;
    };
    const std::string first = capture();
    const std::string second = capture();
    c.check(!first.empty() && first == second, "two process runs agree byte for byte");
    std::ostringstream a, b, err;
    run_cli({"--jobs", "4", "table", "ucharrank", "RX", "--n", "3..16", "--k", "2..15", "--format", "csv"}, a, err);
    run_cli({"table", "ucharrank", "RX", "--n", "3..16", "--k", "2..15", "--format", "csv"}, b, err);
    c.check(a.str() == first && b.str() == first, "parallel and in-process runs agree");
    c.done();
}
