#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "rzeta/chartab.hpp"

using namespace rzeta;

namespace {

MatGroupSpec sl2(long modulus) {
    return {modulus, 2, {{1, 1, 0, 1}, {1, 0, 1, 1}}, "SL2(Z/" + std::to_string(modulus) + ")"};
}

MatGroupSpec gl2f2() {
    return {2, 2, {{0, 1, 1, 0}, {1, 1, 0, 1}}, "GL2(F2)"};
}

long long mulmod(long long a, long long b, long long l) {
    return static_cast<long long>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) % static_cast<unsigned __int128>(l));
}

// Oracle: every multiset of `parts` divisors of `order` whose squares sum to
// `order`, found by exhaustive search. Independent of the table computation.
void degree_multisets(long long order, int parts, long long min_d,
                      std::vector<long long>& cur, std::vector<std::vector<long long>>& out) {
    if (parts == 0) {
        long long sum = 0;
        for (long long d : cur) sum += d * d;
        if (sum == order) out.push_back(cur);
        return;
    }
    for (long long d = min_d; d * d <= order; ++d) {
        if (order % d != 0) continue;
        long long sum = d * d;
        for (long long x : cur) sum += x * x;
        if (sum > order) break;
        cur.push_back(d);
        degree_multisets(order, parts - 1, d, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<long long>> degree_multisets(long long order, int parts) {
    std::vector<long long> cur;
    std::vector<std::vector<long long>> out;
    degree_multisets(order, parts, 1, cur, out);
    return out;
}

std::vector<long long> sorted_degrees(const CharacterTable& t) {
    std::vector<long long> d = t.degrees;
    std::sort(d.begin(), d.end());
    return d;
}

void check_orthogonality(const CharacterTable& t) {
    const long long l = t.modulus;
    const long long order = t.group->order() % l;
    // rows: sum_t |C_t| chi_i(t) chi_j(t^-1) = delta_ij |G|
    for (int i = 0; i < t.num_characters(); ++i)
        for (int j = 0; j < t.num_characters(); ++j) {
            long long acc = 0;
            for (int c = 0; c < t.num_classes(); ++c) {
                long long term = mulmod(t.class_sizes[c] % l, t.rows[i][c], l);
                term = mulmod(term, t.rows[j][t.inverse_class[c]], l);
                acc = (acc + term) % l;
            }
            CHECK(acc == (i == j ? order : 0));
        }
    // columns: sum_chi chi(t) chi(u^-1) = delta_tu |G| / |C_t|
    for (int c = 0; c < t.num_classes(); ++c)
        for (int u = 0; u < t.num_classes(); ++u) {
            long long acc = 0;
            for (int i = 0; i < t.num_characters(); ++i)
                acc = (acc + mulmod(t.rows[i][c], t.rows[i][t.inverse_class[u]], l)) % l;
            long long expect = 0;
            if (c == u) {
                long long centralizer = (t.group->order() / t.class_sizes[c]) % l;
                expect = centralizer;
            }
            CHECK(acc == expect);
        }
}

int trivial_row(const CharacterTable& t) {
    for (int i = 0; i < t.num_characters(); ++i) {
        bool all_one = true;
        for (int c = 0; c < t.num_classes(); ++c)
            if (t.rows[i][c] != 1) { all_one = false; break; }
        if (all_one) return i;
    }
    return -1;
}

} // namespace

TEST_CASE("field modulus selection") {
    CHECK(character_field_modulus(1, 1) == 3);
    CHECK(character_field_modulus(4, 4) == 13);
    CHECK(character_field_modulus(6, 6) == 13);
    CHECK(character_field_modulus(12, 24) == 61);
    CHECK(character_field_modulus(36, 648) == 1297);
}

TEST_CASE("character degrees of small groups against the multiset oracle") {
    FiniteGroupData g6 = enumerate_group(gl2f2());
    CHECK(g6.order() == 6);
    CHECK(g6.classes.size() == 3);
    CharacterTable t6 = character_table(g6);
    auto oracle6 = degree_multisets(6, 3);
    REQUIRE(oracle6.size() == 1);
    CHECK(sorted_degrees(t6) == oracle6[0]);
    CHECK(sorted_degrees(t6) == std::vector<long long>{1, 1, 2});
    check_orthogonality(t6);

    FiniteGroupData g24 = enumerate_group(sl2(3));
    CharacterTable t24 = character_table(g24);
    auto oracle24 = degree_multisets(24, 7);
    REQUIRE(oracle24.size() == 1);
    CHECK(sorted_degrees(t24) == oracle24[0]);
    CHECK(sorted_degrees(t24) == std::vector<long long>{1, 1, 1, 2, 2, 2, 3});
    check_orthogonality(t24);

    MatGroupSpec c4{5, 1, {{2}}, "C4"};
    FiniteGroupData g4 = enumerate_group(c4);
    CharacterTable t4 = character_table(g4);
    CHECK(sorted_degrees(t4) == std::vector<long long>{1, 1, 1, 1});
    check_orthogonality(t4);

    MatGroupSpec trivial{7, 2, {}, "trivial"};
    FiniteGroupData g1 = enumerate_group(trivial);
    CharacterTable t1 = character_table(g1);
    CHECK(t1.degrees == std::vector<long long>{1});
    CHECK(wedderburn_check(t1).equals_order);
}

TEST_CASE("a dimension-3 input: unitriangular matrices mod 3") {
    MatGroupSpec heis{3, 3,
                      {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}},
                      "Heis(3)"};
    FiniteGroupData g = enumerate_group(heis);
    CHECK(g.order() == 27);
    CHECK(g.exponent == 3);
    CHECK(g.classes.size() == 11);

    CharacterTable t = character_table(g);
    auto oracle = degree_multisets(27, 11);
    REQUIRE(oracle.size() == 1);
    CHECK(sorted_degrees(t) == oracle[0]);
    CHECK(sorted_degrees(t) == std::vector<long long>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3});
    check_orthogonality(t);

    // the center is the congruence kernel of reduction on the two diagonals;
    // every noncentral character has stabilizer of index dividing 9
    std::vector<int> center;
    for (int z = 0; z < 27; ++z) {
        bool commutes = true;
        for (int x = 0; x < 27 && commutes; ++x)
            commutes = g.product(z, x) == g.product(x, z);
        if (commutes) center.push_back(z);
    }
    REQUIRE(center.size() == 3);
    FiniteGroupData zc = subgroup_group(g, subgroup_from_elements(g, center));
    long long l = character_field_modulus(g.exponent, g.order());
    CHECK(t.modulus == l);
    CharacterTable tz = character_table(zc, l);
    for (int th = 0; th < tz.num_characters(); ++th) {
        CliffordResult r = clifford_second_moment(g, zc, tz, th);
        CHECK(r.equal);
        CHECK(r.stabilizer_index == 1); // central characters are G-stable
    }
}

TEST_CASE("tables are deterministic and respect degree divisibility") {
    FiniteGroupData g = enumerate_group(sl2(3));
    CharacterTable a = character_table(g);
    CharacterTable b = character_table(g);
    CHECK(a.rows == b.rows);
    CHECK(a.degrees == b.degrees);
    for (long long d : a.degrees) CHECK(g.order() % d == 0);
    CHECK(a.rows[0].size() == g.classes.size());
}

TEST_CASE("wedderburn identity on enumerated groups") {
    for (long m : {3L, 5L}) {
        FiniteGroupData g = enumerate_group(sl2(m));
        CharacterTable t = character_table(g);
        WedderburnCheck w = wedderburn_check(t);
        CHECK(w.equals_order);
        CHECK(w.sum_of_squares == g.order());
        if (m == 5) check_orthogonality(t);
    }
}

TEST_CASE("forced field modulus is validated") {
    FiniteGroupData g = enumerate_group(gl2f2());
    CHECK_THROWS_AS(character_table(g, 7), Error);   // 7 = 1 mod 6 but 7 <= 2|G|
    CHECK_THROWS_AS(character_table(g, 14), Error);  // not prime
    CHECK_THROWS_AS(character_table(g, 17), Error);  // 17 != 1 mod 6
    CharacterTable t = character_table(g, 19);       // 19 = 1 mod 6, 19 > 12
    CHECK(t.modulus == 19);
    CHECK(sorted_degrees(t) == std::vector<long long>{1, 1, 2});
}

TEST_CASE("cap on the table computation") {
    FiniteGroupData g = enumerate_group(sl2(3));
    CHECK_THROWS_AS(character_table(g, 0, 10), CapExceeded);
}

TEST_CASE("restriction multiplicities for the rotation subgroup") {
    FiniteGroupData g = enumerate_group(gl2f2());
    std::vector<int> rot;
    for (int i = 0; i < 6; ++i)
        if (g.product(g.product(i, i), i) == 0) rot.push_back(i);
    FiniteGroupData n = subgroup_group(g, subgroup_from_elements(g, rot));

    CharacterTable tg = character_table(g);
    CharacterTable tn = character_table(n, tg.modulus);
    auto e = restriction_multiplicities(tg, n, tn);

    int triv_g = trivial_row(tg);
    int triv_n = trivial_row(tn);
    REQUIRE(triv_g >= 0);
    REQUIRE(triv_n >= 0);

    for (int th = 0; th < 3; ++th)
        CHECK(e[triv_g][th] == (th == triv_n ? 1 : 0));

    int two = -1;
    for (int i = 0; i < 3; ++i)
        if (tg.degrees[i] == 2) two = i;
    REQUIRE(two >= 0);
    CHECK(e[two][triv_n] == 0);
    for (int th = 0; th < 3; ++th)
        if (th != triv_n) CHECK(e[two][th] == 1); // 2 = 1 + 1 across the conjugate pair

    // row sums reproduce degrees for every character
    for (int chi = 0; chi < 3; ++chi) {
        long long total = 0;
        for (int th = 0; th < 3; ++th) total += e[chi][th] * tn.degrees[th];
        CHECK(total == tg.degrees[chi]);
    }
}

TEST_CASE("restriction rejects mismatched fields and non-normal subgroups") {
    FiniteGroupData g = enumerate_group(gl2f2());
    std::vector<int> rot;
    for (int i = 0; i < 6; ++i)
        if (g.product(g.product(i, i), i) == 0) rot.push_back(i);
    FiniteGroupData n = subgroup_group(g, subgroup_from_elements(g, rot));
    CharacterTable tg = character_table(g);
    CharacterTable tn_own = character_table(n); // picks l = 7, not tg's 13
    CHECK(tn_own.modulus != tg.modulus);
    CHECK_THROWS_AS(restriction_multiplicities(tg, n, tn_own), Error);

    int transposition = -1;
    for (int i = 1; i < 6; ++i)
        if (g.product(i, i) == 0) { transposition = i; break; }
    FiniteGroupData c2 = subgroup_group(g, subgroup_from_elements(g, {0, transposition}));
    CharacterTable tc2 = character_table(c2, tg.modulus);
    CHECK_THROWS_AS(restriction_multiplicities(tg, c2, tc2), NotNormal);
}

TEST_CASE("stabilizers of rotation characters") {
    FiniteGroupData g = enumerate_group(gl2f2());
    std::vector<int> rot;
    for (int i = 0; i < 6; ++i)
        if (g.product(g.product(i, i), i) == 0) rot.push_back(i);
    FiniteGroupData n = subgroup_group(g, subgroup_from_elements(g, rot));
    CharacterTable tg = character_table(g);
    CharacterTable tn = character_table(n, tg.modulus);

    int triv = trivial_row(tn);
    StabilizerResult fixed = stabilizer_subgroup(g, n, tn, triv);
    CHECK(fixed.index == 1);
    CHECK(fixed.orbit_size == 1);
    CHECK(fixed.subgroup.elements.size() == 6);

    for (int th = 0; th < 3; ++th) {
        if (th == triv) continue;
        StabilizerResult s = stabilizer_subgroup(g, n, tn, th);
        CHECK(s.index == 2); // transpositions swap the conjugate pair
        CHECK(s.orbit_size == 2);
        CHECK(s.subgroup.elements == rot);
    }
}

TEST_CASE("clifford second moments for the rotation subgroup") {
    FiniteGroupData g = enumerate_group(gl2f2());
    std::vector<int> rot;
    for (int i = 0; i < 6; ++i)
        if (g.product(g.product(i, i), i) == 0) rot.push_back(i);
    FiniteGroupData n = subgroup_group(g, subgroup_from_elements(g, rot));
    CharacterTable tg = character_table(g);
    CharacterTable tn = character_table(n, tg.modulus);
    int triv = trivial_row(tn);

    for (int th = 0; th < 3; ++th) {
        CliffordResult r = clifford_second_moment(g, n, tn, th);
        CHECK(r.equal);
        if (th == triv) {
            CHECK(r.second_moment == 2); // the two linear characters lift from the quotient
            CHECK(r.stabilizer_over_base == 2);
        } else {
            CHECK(r.second_moment == 1); // single extension inside K = N
            CHECK(r.stabilizer_over_base == 1);
            CHECK(r.stabilizer_index == 2);
        }
    }
}

TEST_CASE("clifford second moments over the center of SL2(F3)") {
    FiniteGroupData g = enumerate_group(sl2(3));
    std::vector<int> center;
    for (int z = 0; z < 24; ++z) {
        bool commutes = true;
        for (int x = 0; x < 24 && commutes; ++x)
            commutes = g.product(z, x) == g.product(x, z);
        if (commutes) center.push_back(z);
    }
    REQUIRE(center.size() == 2);
    FiniteGroupData zc = subgroup_group(g, subgroup_from_elements(g, center));
    long long l = character_field_modulus(g.exponent, g.order());
    CharacterTable tz = character_table(zc, l);
    for (int th = 0; th < tz.num_characters(); ++th) {
        CliffordResult r = clifford_second_moment(g, zc, tz, th);
        CHECK(r.equal);
        CHECK(r.stabilizer_over_base == 12); // central characters are G-stable
        CHECK(r.stabilizer_index == 1);
    }
}

TEST_CASE("level split for GL2(F2) over the rotation subgroup") {
    FiniteGroupData g = enumerate_group(gl2f2());
    std::vector<int> rot;
    for (int i = 0; i < 6; ++i)
        if (g.product(g.product(i, i), i) == 0) rot.push_back(i);
    FiniteGroupData n = subgroup_group(g, subgroup_from_elements(g, rot));
    CharacterTable tg = character_table(g);

    LevelSplit split = level_split(tg, n);
    std::sort(split.factoring_degrees.begin(), split.factoring_degrees.end());
    CHECK(split.factoring_degrees == std::vector<long long>{1, 1});
    CHECK(split.new_degrees == std::vector<long long>{2});
}

TEST_CASE("level split over the center of SL2(F3)") {
    FiniteGroupData g = enumerate_group(sl2(3));
    std::vector<int> center;
    for (int z = 0; z < 24; ++z) {
        bool commutes = true;
        for (int x = 0; x < 24 && commutes; ++x)
            commutes = g.product(z, x) == g.product(x, z);
        if (commutes) center.push_back(z);
    }
    FiniteGroupData zc = subgroup_group(g, subgroup_from_elements(g, center));
    CharacterTable tg = character_table(g);
    LevelSplit split = level_split(tg, zc);

    std::sort(split.factoring_degrees.begin(), split.factoring_degrees.end());
    std::sort(split.new_degrees.begin(), split.new_degrees.end());
    auto oracle = degree_multisets(12, 4); // the quotient has 12 elements, 4 characters factor
    REQUIRE(oracle.size() == 1);
    CHECK(split.factoring_degrees == oracle[0]);
    CHECK(split.factoring_degrees == std::vector<long long>{1, 1, 1, 3});
    CHECK(split.new_degrees == std::vector<long long>{2, 2, 2});
}

TEST_CASE("level split edge subgroups") {
    FiniteGroupData g = enumerate_group(gl2f2());
    CharacterTable tg = character_table(g);

    FiniteGroupData whole = subgroup_group(g, subgroup_from_elements(g, {0, 1, 2, 3, 4, 5}));
    LevelSplit only_trivial = level_split(tg, whole);
    CHECK(only_trivial.factoring_degrees == std::vector<long long>{1});

    FiniteGroupData one = subgroup_group(g, subgroup_from_elements(g, {0}));
    LevelSplit everything = level_split(tg, one);
    CHECK(everything.new_degrees.empty());
    CHECK(everything.factoring_degrees.size() == 3);
}

TEST_CASE("filtered second moments") {
    FilteredMomentReport r = filtered_second_moment_report({1, 1, 1, 2, 2, 2, 3}, 24, 3, 2);
    CHECK(r.rows[0].retained == 15);
    CHECK(r.rows[0].remainder == 9);
    REQUIRE(r.rows[0].remainder_valuation.has_value());
    CHECK(*r.rows[0].remainder_valuation == 2);
    CHECK(r.rows[0].ok);
    CHECK(r.rows[1].remainder == 0); // no degree is divisible by 9
    CHECK(r.order_valuation == 1);

    FilteredMomentReport tiny = filtered_second_moment_report({1}, 1, 3, 4);
    for (const auto& row : tiny.rows) {
        CHECK(row.retained == 1);
        CHECK(row.remainder == 0);
        CHECK(row.ok);
    }

    CHECK_THROWS_AS(filtered_second_moment_report({1, 2}, 24, 3, 2), WedderburnMismatch);
}

TEST_CASE("table export is stable") {
    FiniteGroupData g = enumerate_group(gl2f2());
    CharacterTable t = character_table(g);
    std::string a = character_table_to_json_text(t, g.label);
    std::string b = character_table_to_json_text(character_table(g), g.label);
    CHECK(a == b);
    CHECK(a.find("\"degrees\"") != std::string::npos);
}
