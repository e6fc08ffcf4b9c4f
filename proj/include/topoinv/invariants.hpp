#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topoinv/gralg.hpp"
#include "topoinv/spaces.hpp"

namespace topoinv {

enum class RankKind { Exact, Interval, Uncovered };

// Upper characteristic rank as decided by the case tables below. Intervals
// are closed; Uncovered means no available result applies.
struct RankResult {
    RankKind kind = RankKind::Uncovered;
    int lo = 0;  // equals hi for Exact
    int hi = 0;
    std::string case_label;
    std::optional<int> n_index;
    std::string reason;              // why Uncovered
    std::vector<std::string> notes;  // advisory cross-checks

    static RankResult exact(int v, std::string label, std::optional<int> n = std::nullopt);
    static RankResult interval(int lo, int hi, std::string label, std::optional<int> n = std::nullopt);
    static RankResult uncovered(std::string reason, std::string label = {});

    int value() const noexcept { return lo; }
};

enum class Field { R, C, H };

// Stiefel manifolds F V_{n,k}.
RankResult ucharrank_stiefel(Field f, int n, int k);

// Real projective (RX) and flip (FV) Stiefel manifolds; k is the half-width
// for FV.
RankResult ucharrank_projective_real(Family family, int n, int k);

// Complex and quaternionic projective Stiefel manifolds.
RankResult ucharrank_projective_CH(Field f, int n, int k);

// Dispatches on the family of s.
RankResult ucharrank(const SpaceId& s);

// 1 + floor((d - j - 1) / r_y)
int cup_bound_nt(int d, int j, int r_y);

// 1 + floor((d - 1 - charrank) / k)
int cup_bound_korbas(int d, int k, int charrank);

struct NamedBound {
    std::string name;
    int value;
};

// Cup-length upper bound derived from the first nontrivial characteristic
// class of the covering line bundle; absent when its hypotheses fail.
std::optional<NamedBound> cup_bound_line_bundle(const SpaceId& s);

struct CupReport {
    SpaceId space;
    CupLength exact;
    std::optional<int> oracle;  // exhaustive cross-check, when small enough
    std::vector<NamedBound> bounds;
    std::vector<std::string> violations;  // names of bounds below the exact value
};

inline constexpr std::uint64_t kReportOracleCap = std::uint64_t(1) << 10;

CupReport cup_report(const SpaceId& s, std::uint64_t oracle_cap = kReportOracleCap);

} // namespace topoinv
