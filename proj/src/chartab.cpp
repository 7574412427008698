#include "rzeta/chartab.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace rzeta {

namespace {

// ---------------------------------------------------------------------------
// F_l arithmetic and small dense linear algebra
// ---------------------------------------------------------------------------

struct Field {
    long long l;

    long long add(long long a, long long b) const {
        long long s = a + b;
        return s >= l ? s - l : s;
    }
    long long sub(long long a, long long b) const {
        long long s = a - b;
        return s < 0 ? s + l : s;
    }
    long long mul(long long a, long long b) const {
        return static_cast<long long>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) % static_cast<unsigned __int128>(l));
    }
    long long pow(long long a, long long e) const {
        long long r = 1 % l;
        a %= l;
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    long long inv(long long a) const { return pow(a, l - 2); }
    long long reduce(long long a) const {
        long long r = a % l;
        return r < 0 ? r + l : r;
    }
};

using FVec = std::vector<long long>;
using FMatrix = std::vector<FVec>;

/// Row-reduced echelon form in place; returns pivot column indices.
std::vector<int> rref(FMatrix& m, const Field& F) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(rank)]);
        long long inv = F.inv(m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)]);
        for (int k = col; k < cols; ++k)
            m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)] =
                F.mul(inv, m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            long long f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int k = col; k < cols; ++k)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
                    F.sub(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)],
                          F.mul(f, m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)]));
        }
        pivots.push_back(col);
        ++rank;
    }
    m.resize(static_cast<std::size_t>(rank), FVec{});
    return pivots;
}

/// Kernel basis of a square matrix, one vector per free column, ascending.
std::vector<FVec> kernel_basis(FMatrix a, const Field& F) {
    const int n = static_cast<int>(a.size());
    std::vector<int> pivots = rref(a, F);
    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    std::vector<FVec> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        FVec x(static_cast<std::size_t>(n), 0);
        x[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[static_cast<std::size_t>(pivots[r])] =
                F.sub(0, a[r][static_cast<std::size_t>(f)]);
        basis.push_back(std::move(x));
    }
    return basis;
}

long long det(FMatrix a, const Field& F) {
    const int n = static_cast<int>(a.size());
    long long d = 1;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { pr = r; break; }
        if (pr < 0) return 0;
        if (pr != col) {
            std::swap(a[static_cast<std::size_t>(pr)], a[static_cast<std::size_t>(col)]);
            d = F.sub(0, d);
        }
        long long piv = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        d = F.mul(d, piv);
        long long inv = F.inv(piv);
        for (int r = col + 1; r < n; ++r) {
            long long f = F.mul(inv, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
            if (f == 0) continue;
            for (int k = col; k < n; ++k)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
                    F.sub(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)],
                          F.mul(f, a[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)]));
        }
    }
    return d;
}

/// Characteristic polynomial det(A - X I), coefficients ascending, via
/// evaluation at X = 0..n and Lagrange interpolation.
FVec char_poly(const FMatrix& a, const Field& F) {
    const int n = static_cast<int>(a.size());
    std::vector<long long> xs, ys;
    for (int x = 0; x <= n; ++x) {
        FMatrix b = a;
        for (int i = 0; i < n; ++i)
            b[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                F.sub(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], F.reduce(x));
        xs.push_back(F.reduce(x));
        ys.push_back(det(b, F));
    }
    // full = prod (X - x_j); per point divide out (X - x_i) synthetically
    FVec full{1};
    for (long long x : xs) {
        FVec next(full.size() + 1, 0);
        for (std::size_t i = 0; i < full.size(); ++i) {
            next[i + 1] = F.add(next[i + 1], full[i]);
            next[i] = F.sub(next[i], F.mul(x, full[i]));
        }
        full = std::move(next);
    }
    FVec poly(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // quotient = full / (X - x_i)
        FVec quo(full.size() - 1, 0);
        long long carry = 0;
        for (std::size_t k = full.size(); k-- > 1;) {
            carry = F.add(full[k], F.mul(xs[i], carry));
            quo[k - 1] = carry;
        }
        long long denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (j != i) denom = F.mul(denom, F.sub(xs[i], xs[j]));
        long long scale = F.mul(ys[i], F.inv(denom));
        for (std::size_t k = 0; k < poly.size(); ++k)
            poly[k] = F.add(poly[k], F.mul(scale, quo[k]));
    }
    return poly;
}

long long poly_eval(const FVec& p, long long x, const Field& F) {
    long long acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = F.add(F.mul(acc, x), p[i]);
    return acc;
}

/// Distinct roots in ascending order; scans with deflation. Throws
/// SplitFailure if the polynomial does not split over F_l.
std::vector<long long> poly_roots(FVec p, const Field& F) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    std::vector<long long> roots;
    for (long long x = 0; x < F.l && p.size() > 1; ++x) {
        if (poly_eval(p, x, F) != 0) continue;
        roots.push_back(x);
        while (p.size() > 1 && poly_eval(p, x, F) == 0) {
            // synthetic division by (X - x)
            FVec quo(p.size() - 1, 0);
            long long carry = 0;
            for (std::size_t k = p.size(); k-- > 1;) {
                carry = F.add(p[k], F.mul(x, carry));
                quo[k - 1] = carry;
            }
            p = std::move(quo);
        }
    }
    if (p.size() > 1)
        throw SplitFailure("characteristic polynomial does not split over the field");
    return roots;
}

long long symmetric_lift(long long x, long long l) { return 2 * x > l ? x - l : x; }

bool is_normal_in(const FiniteGroupData& parent, const std::vector<int>& subset) {
    std::vector<char> member(parent.elements.size(), 0);
    for (int i : subset) member[static_cast<std::size_t>(i)] = 1;
    std::vector<int> conjugators = parent.generator_indices;
    if (conjugators.empty()) {
        conjugators.resize(parent.elements.size());
        for (std::size_t i = 0; i < conjugators.size(); ++i) conjugators[i] = static_cast<int>(i);
    }
    for (int s : conjugators) {
        int si = parent.inverse[static_cast<std::size_t>(s)];
        for (int h : subset)
            if (!member[static_cast<std::size_t>(parent.product(parent.product(s, h), si))])
                return false;
    }
    return true;
}

void check_subgroup_wiring(const FiniteGroupData& parent, const FiniteGroupData& sub) {
    if (sub.to_parent.size() != sub.elements.size())
        throw Error("subgroup data lacks a parent index map");
    for (std::size_t i = 0; i < sub.elements.size(); ++i) {
        int pi = sub.to_parent[i];
        if (pi < 0 || pi >= static_cast<int>(parent.elements.size()) ||
            parent.elements[static_cast<std::size_t>(pi)] != sub.elements[i])
            throw Error("subgroup elements do not match their parent images");
    }
}

// ---------------------------------------------------------------------------
// Dixon-Schneider
// ---------------------------------------------------------------------------

struct Subspace {
    FMatrix basis;           // rref rows, each of ambient length k
    std::vector<int> pivots;
};

/// Class matrix rows/cols indexed by classes: entry [j][t] counts pairs
/// (x, y) in C_i x C_j with x*y equal to the t-th representative.
FMatrix class_matrix(const FiniteGroupData& g, int i, const Field& F) {
    const int k = static_cast<int>(g.classes.size());
    FMatrix m(static_cast<std::size_t>(k), FVec(static_cast<std::size_t>(k), 0));
    for (int x : g.classes[static_cast<std::size_t>(i)].members) {
        int xi = g.inverse[static_cast<std::size_t>(x)];
        for (int t = 0; t < k; ++t) {
            int y = g.product(xi, g.classes[static_cast<std::size_t>(t)].representative);
            int j = g.class_of[static_cast<std::size_t>(y)];
            FVec& row = m[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(t)] = F.add(row[static_cast<std::size_t>(t)], 1);
        }
    }
    return m;
}

} // namespace

long long character_field_modulus(long exponent, long long order) {
    long long c = exponent + 1;
    while (c <= 2 * order || !is_prime(static_cast<long>(c))) c += exponent;
    return c;
}

CharacterTable character_table(const FiniteGroupData& g, long long forced_modulus, long long cap) {
    if (g.order() > cap)
        throw CapExceeded("group order " + std::to_string(g.order()) +
                          " exceeds character-table cap " + std::to_string(cap));

    const int k = static_cast<int>(g.classes.size());
    const long long n = g.order();

    long long l = forced_modulus ? forced_modulus
                                 : character_field_modulus(g.exponent, n);
    if (forced_modulus) {
        if (!is_prime(static_cast<long>(l)) || (l - 1) % g.exponent != 0 || l <= 2 * n)
            throw Error("forced field modulus fails the table conditions");
    }
    const Field F{l};

    CharacterTable table;
    table.group = &g;
    table.modulus = l;
    for (const auto& c : g.classes)
        table.class_sizes.push_back(static_cast<long long>(c.members.size()));
    for (const auto& c : g.classes)
        table.inverse_class.push_back(
            g.class_of[static_cast<std::size_t>(g.inverse[static_cast<std::size_t>(c.representative)])]);

    // simultaneous eigenspaces of the class matrices, split in class order
    std::vector<Subspace> spaces;
    {
        Subspace full;
        full.basis.assign(static_cast<std::size_t>(k), FVec(static_cast<std::size_t>(k), 0));
        for (int i = 0; i < k; ++i) {
            full.basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
            full.pivots.push_back(i);
        }
        spaces.push_back(std::move(full));
    }

    for (int i = 1; i < k; ++i) {
        bool all_split = true;
        for (const auto& s : spaces)
            if (s.basis.size() > 1) { all_split = false; break; }
        if (all_split) break;

        FMatrix m = class_matrix(g, i, F);
        std::vector<Subspace> next;
        for (auto& s : spaces) {
            const int d = static_cast<int>(s.basis.size());
            if (d == 1) {
                next.push_back(std::move(s));
                continue;
            }
            // restricted action in subspace coordinates
            FMatrix images(static_cast<std::size_t>(d), FVec(static_cast<std::size_t>(k), 0));
            for (int c = 0; c < d; ++c)
                for (int j = 0; j < k; ++j) {
                    long long acc = 0;
                    for (int t = 0; t < k; ++t)
                        acc = F.add(acc, F.mul(m[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)],
                                               s.basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)]));
                    images[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = acc;
                }
            FMatrix action(static_cast<std::size_t>(d), FVec(static_cast<std::size_t>(d), 0));
            for (int c = 0; c < d; ++c) {
                for (int r = 0; r < d; ++r)
                    action[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        images[static_cast<std::size_t>(c)][static_cast<std::size_t>(s.pivots[static_cast<std::size_t>(r)])];
                // invariance check: the coordinates must reproduce the image
                for (int t = 0; t < k; ++t) {
                    long long acc = 0;
                    for (int r = 0; r < d; ++r)
                        acc = F.add(acc, F.mul(action[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                               s.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)]));
                    if (acc != images[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)])
                        throw SplitFailure("subspace is not invariant under a class matrix");
                }
            }

            bool scalar = true;
            for (int r = 0; r < d && scalar; ++r)
                for (int c = 0; c < d && scalar; ++c)
                    if (action[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] !=
                        (r == c ? action[0][0] : 0))
                        scalar = false;
            if (scalar) {
                next.push_back(std::move(s));
                continue;
            }

            std::vector<long long> eigenvalues = poly_roots(char_poly(action, F), F);
            int total = 0;
            for (long long lam : eigenvalues) {
                FMatrix shifted = action;
                for (int r = 0; r < d; ++r)
                    shifted[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] =
                        F.sub(shifted[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)], lam);
                std::vector<FVec> coords = kernel_basis(std::move(shifted), F);
                if (coords.empty()) continue;
                Subspace child;
                for (const FVec& x : coords) {
                    FVec w(static_cast<std::size_t>(k), 0);
                    for (int r = 0; r < d; ++r) {
                        if (x[static_cast<std::size_t>(r)] == 0) continue;
                        for (int t = 0; t < k; ++t)
                            w[static_cast<std::size_t>(t)] =
                                F.add(w[static_cast<std::size_t>(t)],
                                      F.mul(x[static_cast<std::size_t>(r)],
                                            s.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)]));
                    }
                    child.basis.push_back(std::move(w));
                }
                total += static_cast<int>(child.basis.size());
                child.pivots = rref(child.basis, F);
                next.push_back(std::move(child));
            }
            if (total != d)
                throw SplitFailure("class matrix failed to diagonalize on an invariant subspace");
        }
        spaces = std::move(next);
    }

    for (const auto& s : spaces)
        if (s.basis.size() != 1)
            throw SplitFailure("class matrices left a common eigenspace of dimension > 1");
    if (static_cast<int>(spaces.size()) != k)
        throw SplitFailure("eigenspace count does not match class count");

    // central character vectors -> degrees -> character values
    std::vector<long long> size_inv(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t)
        size_inv[static_cast<std::size_t>(t)] = F.inv(F.reduce(table.class_sizes[static_cast<std::size_t>(t)]));
    long long order_mod = F.reduce(n);
    long long sqrt_bound = 1;
    while (sqrt_bound * sqrt_bound < n) ++sqrt_bound;

    for (const auto& s : spaces) {
        FVec w = s.basis[0];
        if (w[0] == 0) throw SplitFailure("eigenvector vanishes on the identity class");
        long long norm = F.inv(w[0]);
        FVec omega(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t)
            omega[static_cast<std::size_t>(t)] = F.mul(norm, w[static_cast<std::size_t>(t)]);

        long long s_sum = 0;
        for (int t = 0; t < k; ++t)
            s_sum = F.add(s_sum,
                          F.mul(F.mul(omega[static_cast<std::size_t>(t)],
                                      omega[static_cast<std::size_t>(table.inverse_class[static_cast<std::size_t>(t)])]),
                                size_inv[static_cast<std::size_t>(t)]));
        if (s_sum == 0) throw SplitFailure("degree norm vanished");
        long long degree_sq = F.mul(order_mod, F.inv(s_sum));

        long long degree = 0;
        for (long long cand = 1; cand <= sqrt_bound; ++cand)
            if (F.mul(F.reduce(cand), F.reduce(cand)) == degree_sq) { degree = cand; break; }
        if (degree == 0) throw SplitFailure("no integer degree matches the norm equation");

        FVec row(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t)
            row[static_cast<std::size_t>(t)] =
                F.mul(F.mul(omega[static_cast<std::size_t>(t)], F.reduce(degree)),
                      size_inv[static_cast<std::size_t>(t)]);
        table.rows.push_back(std::move(row));
        table.degrees.push_back(degree);
    }

    long long wedderburn = 0;
    for (long long d : table.degrees) {
        wedderburn += d * d;
        if (n % d != 0) throw SplitFailure("a computed degree does not divide the group order");
    }
    if (wedderburn != n)
        throw SplitFailure("computed degrees violate the sum-of-squares identity");
    return table;
}

WedderburnCheck wedderburn_check(const CharacterTable& t) {
    long long sum = 0;
    for (long long d : t.degrees) sum += d * d;
    return {sum, sum == t.group->order()};
}

namespace {

/// Inner products <Res_N chi, theta> from a fusion map of sub classes into
/// parent classes; all values in the shared field, lifted symmetrically.
std::vector<std::vector<long long>> multiplicities_from_fusion(
    const CharacterTable& parent_table, const CharacterTable& sub_table,
    const std::vector<int>& fusion) {
    if (parent_table.modulus != sub_table.modulus)
        throw Error("tables live over different field primes");
    const Field F{parent_table.modulus};
    const long long sub_order = sub_table.group->order();
    long long inv_order = F.inv(F.reduce(sub_order));

    std::vector<std::vector<long long>> e(static_cast<std::size_t>(parent_table.num_characters()),
                                          std::vector<long long>(static_cast<std::size_t>(sub_table.num_characters()), 0));
    for (int chi = 0; chi < parent_table.num_characters(); ++chi) {
        for (int th = 0; th < sub_table.num_characters(); ++th) {
            long long acc = 0;
            for (int c = 0; c < sub_table.num_classes(); ++c) {
                long long term = F.mul(F.reduce(sub_table.class_sizes[static_cast<std::size_t>(c)]),
                                       parent_table.rows[static_cast<std::size_t>(chi)][static_cast<std::size_t>(fusion[static_cast<std::size_t>(c)])]);
                term = F.mul(term,
                             sub_table.rows[static_cast<std::size_t>(th)][static_cast<std::size_t>(sub_table.inverse_class[static_cast<std::size_t>(c)])]);
                acc = F.add(acc, term);
            }
            long long lifted = symmetric_lift(F.mul(acc, inv_order), F.l);
            if (lifted < 0)
                throw Error("restriction multiplicity lifted negative; field too small");
            e[static_cast<std::size_t>(chi)][static_cast<std::size_t>(th)] = lifted;
        }
        long long total = 0;
        for (int th = 0; th < sub_table.num_characters(); ++th)
            total += e[static_cast<std::size_t>(chi)][static_cast<std::size_t>(th)] *
                     sub_table.degrees[static_cast<std::size_t>(th)];
        if (total != parent_table.degrees[static_cast<std::size_t>(chi)])
            throw Error("restriction multiplicities do not add up to the degree");
    }
    return e;
}

std::vector<int> fusion_map(const CharacterTable& parent_table, const FiniteGroupData& sub) {
    const FiniteGroupData& parent = *parent_table.group;
    std::vector<int> fusion(sub.classes.size());
    for (std::size_t c = 0; c < sub.classes.size(); ++c) {
        int rep = sub.classes[c].representative;
        fusion[c] = parent.class_of[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(rep)])];
    }
    return fusion;
}

} // namespace

std::vector<std::vector<long long>> restriction_multiplicities(const CharacterTable& parent_table,
                                                               const FiniteGroupData& sub,
                                                               const CharacterTable& sub_table) {
    const FiniteGroupData& parent = *parent_table.group;
    check_subgroup_wiring(parent, sub);
    if (sub_table.group != &sub) throw Error("subgroup table does not belong to the subgroup data");
    if (!is_normal_in(parent, sub.to_parent)) throw NotNormal("subgroup is not normal");
    return multiplicities_from_fusion(parent_table, sub_table, fusion_map(parent_table, sub));
}

StabilizerResult stabilizer_subgroup(const FiniteGroupData& parent, const FiniteGroupData& sub,
                                     const CharacterTable& sub_table, int theta) {
    check_subgroup_wiring(parent, sub);
    if (sub_table.group != &sub) throw Error("subgroup table does not belong to the subgroup data");
    if (theta < 0 || theta >= sub_table.num_characters()) throw Error("character index out of range");
    if (!is_normal_in(parent, sub.to_parent)) throw NotNormal("subgroup is not normal");

    std::vector<int> sub_index_of(parent.elements.size(), -1);
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
        sub_index_of[static_cast<std::size_t>(sub.to_parent[i])] = static_cast<int>(i);

    const int kn = static_cast<int>(sub.classes.size());
    const FVec& theta_row = sub_table.rows[static_cast<std::size_t>(theta)];

    std::vector<int> stabilizer;
    std::set<FVec> orbit;
    for (int g = 0; g < static_cast<int>(parent.elements.size()); ++g) {
        int gi = parent.inverse[static_cast<std::size_t>(g)];
        FVec image(static_cast<std::size_t>(kn));
        for (int c = 0; c < kn; ++c) {
            int rep_parent = sub.to_parent[static_cast<std::size_t>(sub.classes[static_cast<std::size_t>(c)].representative)];
            int conj = parent.product(parent.product(g, rep_parent), gi);
            int conj_sub = sub_index_of[static_cast<std::size_t>(conj)];
            if (conj_sub < 0) throw NotNormal("conjugation left the subgroup");
            image[static_cast<std::size_t>(c)] =
                theta_row[static_cast<std::size_t>(sub.class_of[static_cast<std::size_t>(conj_sub)])];
        }
        if (image == theta_row) stabilizer.push_back(g);
        orbit.insert(std::move(image));
    }

    StabilizerResult result;
    result.orbit_size = static_cast<long long>(orbit.size());
    result.index = parent.order() / static_cast<long long>(stabilizer.size());
    if (result.orbit_size * static_cast<long long>(stabilizer.size()) != parent.order())
        throw Error("orbit-stabilizer identity failed");
    result.subgroup = subgroup_from_elements(parent, std::move(stabilizer));
    return result;
}

CliffordResult clifford_second_moment(const FiniteGroupData& parent, const FiniteGroupData& sub,
                                      const CharacterTable& sub_table, int theta) {
    StabilizerResult stab = stabilizer_subgroup(parent, sub, sub_table, theta);
    FiniteGroupData k_grp = subgroup_group(parent, stab.subgroup);
    CharacterTable k_table = character_table(k_grp, sub_table.modulus);

    // fuse the sub classes into K's classes (N sits inside every stabilizer)
    std::vector<int> k_index_of(parent.elements.size(), -1);
    for (std::size_t i = 0; i < k_grp.to_parent.size(); ++i)
        k_index_of[static_cast<std::size_t>(k_grp.to_parent[i])] = static_cast<int>(i);
    std::vector<int> fusion(sub.classes.size());
    for (std::size_t c = 0; c < sub.classes.size(); ++c) {
        int rep_parent = sub.to_parent[static_cast<std::size_t>(sub.classes[c].representative)];
        int in_k = k_index_of[static_cast<std::size_t>(rep_parent)];
        if (in_k < 0) throw Error("base subgroup is not contained in the stabilizer");
        fusion[c] = k_grp.class_of[static_cast<std::size_t>(in_k)];
    }

    std::vector<std::vector<long long>> e = multiplicities_from_fusion(k_table, sub_table, fusion);

    ZZ moment_num(0);
    for (int chi = 0; chi < k_table.num_characters(); ++chi) {
        if (e[static_cast<std::size_t>(chi)][static_cast<std::size_t>(theta)] == 0) continue;
        ZZ d(static_cast<long>(k_table.degrees[static_cast<std::size_t>(chi)]));
        moment_num += d * d;
    }
    ZZ d_theta(static_cast<long>(sub_table.degrees[static_cast<std::size_t>(theta)]));

    CliffordResult result;
    result.second_moment = QQ(moment_num) / QQ(d_theta * d_theta);
    result.stabilizer_over_base = ZZ(static_cast<long>(k_grp.order() / sub.order()));
    result.equal = result.second_moment == QQ(result.stabilizer_over_base);
    result.stabilizer_index = stab.index;
    return result;
}

LevelSplit level_split(const CharacterTable& parent_table, const FiniteGroupData& sub) {
    const FiniteGroupData& parent = *parent_table.group;
    check_subgroup_wiring(parent, sub);
    if (!is_normal_in(parent, sub.to_parent)) throw NotNormal("subgroup is not normal");

    const Field F{parent_table.modulus};
    long long inv_order = F.inv(F.reduce(sub.order()));

    LevelSplit split;
    for (int chi = 0; chi < parent_table.num_characters(); ++chi) {
        long long acc = 0;
        for (int pi : sub.to_parent)
            acc = F.add(acc, parent_table.rows[static_cast<std::size_t>(chi)]
                                              [static_cast<std::size_t>(parent.class_of[static_cast<std::size_t>(pi)])]);
        long long trivial_mult = symmetric_lift(F.mul(acc, inv_order), F.l);
        long long degree = parent_table.degrees[static_cast<std::size_t>(chi)];
        if (trivial_mult == degree)
            split.factoring_degrees.push_back(degree);
        else
            split.new_degrees.push_back(degree);
    }

    long long factor_sum = 0;
    for (long long d : split.factoring_degrees) factor_sum += d * d;
    if (factor_sum != parent.order() / sub.order())
        throw Error("factoring characters do not account for the quotient order");
    return split;
}

FilteredMomentReport filtered_second_moment_report(const std::vector<long long>& degrees,
                                                   long long order, long p, int j_max) {
    if (!is_prime(p)) throw InvalidPrime("not a prime: " + std::to_string(p));
    if (order < 1) throw Error("order must be positive");
    long long total = 0;
    for (long long d : degrees) {
        if (d < 1) throw Error("degrees must be positive");
        total += d * d;
    }
    if (total != order)
        throw WedderburnMismatch("sum of squared degrees " + std::to_string(total) +
                                 " differs from the order " + std::to_string(order));

    FilteredMomentReport report;
    report.order_valuation = valuation(ZZ(static_cast<long>(order)), p);
    report.all_ok = true;
    long long pj = 1;
    bool overflow = false;
    for (int j = 1; j <= j_max; ++j) {
        if (!overflow) {
            if (pj > order / p + 1) overflow = true;
            else pj *= p;
        }
        FilteredMomentRow row;
        row.j = j;
        row.retained = 0;
        for (long long d : degrees)
            if (overflow || d % pj != 0) row.retained += d * d;
        row.remainder = order - row.retained;
        if (row.remainder == 0) {
            row.remainder_valuation = std::nullopt;
            row.ok = true;
        } else {
            long v = valuation(ZZ(static_cast<long>(row.remainder)), p);
            row.remainder_valuation = v;
            row.ok = v >= 2L * j;
        }
        if (!row.ok) report.all_ok = false;
        report.rows.push_back(row);
    }
    return report;
}

std::string character_table_to_json_text(const CharacterTable& t, const std::string& label) {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["order"] = t.group->order();
    j["modulus"] = t.modulus;
    j["class_sizes"] = t.class_sizes;
    j["degrees"] = t.degrees;
    j["values"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (long long v : row) r.push_back(std::to_string(v));
        j["values"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

} // namespace rzeta
