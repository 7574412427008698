#pragma once

#include <optional>

#include "rzeta/matgroup.hpp"
#include "rzeta/rational.hpp"

namespace rzeta {

/// Character table with values in the prime field F_l, l = 1 mod exponent(G)
/// and l > 2|G| so that degrees, multiplicities and inner products lift
/// uniquely from the symmetric residue range. Row and column order are fully
/// deterministic: columns follow the class order of the group, rows follow
/// the eigenspace-splitting order.
struct CharacterTable {
    const FiniteGroupData* group = nullptr;
    long long modulus = 0;                       // the field prime l
    std::vector<long long> class_sizes;
    std::vector<int> inverse_class;              // class index of the inverse class
    std::vector<std::vector<long long>> rows;    // [character][class], values in [0, l)
    std::vector<long long> degrees;              // lifted integer degrees, row order

    int num_classes() const { return static_cast<int>(class_sizes.size()); }
    int num_characters() const { return static_cast<int>(rows.size()); }
};

/// Least prime l = 1 (mod exponent) with l > 2*order.
long long character_field_modulus(long exponent, long long order);

/// Dixon-Schneider: simultaneous eigenspaces of the class matrices over F_l.
/// forced_modulus = 0 picks character_field_modulus(exponent(G), |G|); a
/// nonzero value is validated against the same conditions (used to put the
/// tables of a group and its subgroups in one field).
CharacterTable character_table(const FiniteGroupData& g, long long forced_modulus = 0,
                               long long cap = 20000);
CharacterTable character_table(FiniteGroupData&&, long long = 0, long long = 20000) = delete;

struct WedderburnCheck {
    long long sum_of_squares;
    bool equals_order;
};
WedderburnCheck wedderburn_check(const CharacterTable& t);

/// Multiplicities e(chi, theta) = <Res_N chi, theta> for N normal in the
/// table's group. Both tables must live over the same field prime. The
/// subgroup data must carry its to_parent map into the parent group.
std::vector<std::vector<long long>> restriction_multiplicities(const CharacterTable& parent_table,
                                                               const FiniteGroupData& sub,
                                                               const CharacterTable& sub_table);

struct StabilizerResult {
    SubgroupHandle subgroup;   // in parent indices
    long long index;           // |G : K|
    long long orbit_size;      // of theta under conjugation; orbit * |K| = |G|
};

/// Stabilizer of the theta-th row of sub_table under the conjugation action
/// of the parent group on the characters of the normal subgroup.
StabilizerResult stabilizer_subgroup(const FiniteGroupData& parent, const FiniteGroupData& sub,
                                     const CharacterTable& sub_table, int theta);

struct CliffordResult {
    QQ second_moment;          // sum over Irr(K|theta) of (chi(1)/theta(1))^2
    ZZ stabilizer_over_base;   // |K : N|
    bool equal;
    long long stabilizer_index; // |G : K|
};

/// Builds K = St_G(theta), its character table over the same field prime as
/// sub_table, and compares the second moment of Irr(K|theta) degree ratios
/// with |K : N|.
CliffordResult clifford_second_moment(const FiniteGroupData& parent, const FiniteGroupData& sub,
                                      const CharacterTable& sub_table, int theta);

struct LevelSplit {
    std::vector<long long> factoring_degrees; // characters with M inside the kernel
    std::vector<long long> new_degrees;       // the rest
};

/// Partition of the degree multiset by whether the character factors through
/// G/M, detected by e(chi, trivial_M) = chi(1).
LevelSplit level_split(const CharacterTable& parent_table, const FiniteGroupData& sub);

struct FilteredMomentRow {
    int j;
    long long retained;                     // sum of d^2 over degrees with p^j not dividing d
    long long remainder;                    // order - retained
    std::optional<long> remainder_valuation; // nullopt when the remainder is 0
    bool ok;                                // valuation >= 2j (vacuous for remainder 0)
};

struct FilteredMomentReport {
    std::vector<FilteredMomentRow> rows;
    long order_valuation;
    bool all_ok;
};

/// Per-j second moments of the degrees not divisible by p^j. Requires the
/// Wedderburn identity sum d^2 = order (WedderburnMismatch otherwise).
FilteredMomentReport filtered_second_moment_report(const std::vector<long long>& degrees,
                                                   long long order, long p, int j_max);

/// Stable JSON export: label, field prime, class sizes, degrees, value matrix
/// as decimal strings.
std::string character_table_to_json_text(const CharacterTable& t, const std::string& label);

} // namespace rzeta
