#include "rzeta/matgroup.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace rzeta {

namespace {

std::string encode(const Mat& m) {
    std::string s(m.size() * sizeof(uint32_t), '\0');
    std::memcpy(s.data(), m.data(), s.size());
    return s;
}

long mod_reduce(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

/// Determinant mod m by Laplace expansion; fine for the small dimensions used here.
long det_mod(const std::vector<long>& a, int d, long m) {
    std::vector<int> cols(static_cast<std::size_t>(d));
    std::iota(cols.begin(), cols.end(), 0);
    std::function<long(int, std::vector<int>&)> rec = [&](int row, std::vector<int>& cs) -> long {
        if (cs.empty()) return 1 % m;
        long acc = 0;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            long entry = a[static_cast<std::size_t>(row) * static_cast<std::size_t>(d) +
                           static_cast<std::size_t>(cs[k])];
            if (entry % m == 0) continue;
            std::vector<int> rest;
            rest.reserve(cs.size() - 1);
            for (std::size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            long sub = rec(row + 1, rest);
            long term = mod_reduce(entry, m) * sub % m;
            acc = (k % 2 == 0) ? (acc + term) % m : mod_reduce(acc - term, m);
        }
        return acc;
    };
    return rec(0, cols);
}

long gcd_long(long a, long b) {
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

Mat identity_mat(int d) {
    Mat id(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i)
        id[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = 1;
    return id;
}

} // namespace

int FiniteGroupData::index_of(const Mat& m) const {
    auto it = lookup_.find(encode(m));
    return it == lookup_.end() ? -1 : it->second;
}

Mat FiniteGroupData::multiply(const Mat& a, const Mat& b) const {
    const std::size_t d = static_cast<std::size_t>(dim);
    Mat c(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            uint64_t aik = a[i * d + k];
            if (!aik) continue;
            for (std::size_t j = 0; j < d; ++j)
                c[i * d + j] = static_cast<uint32_t>(
                    (c[i * d + j] + aik * b[k * d + j]) % static_cast<uint64_t>(modulus));
        }
    return c;
}

int FiniteGroupData::product(int a, int b) const {
    int idx = index_of(multiply(elements[static_cast<std::size_t>(a)],
                                elements[static_cast<std::size_t>(b)]));
    if (idx < 0) throw Error("product left the element set; data is not closed");
    return idx;
}

FiniteGroupData build_group_data(long modulus, int dim, std::string label,
                                 std::vector<Mat> elements,
                                 std::vector<int> generator_indices,
                                 std::vector<int> to_parent) {
    FiniteGroupData g;
    g.modulus = modulus;
    g.dim = dim;
    g.label = std::move(label);
    g.elements = std::move(elements);
    g.generator_indices = std::move(generator_indices);
    g.to_parent = std::move(to_parent);
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        g.lookup_.emplace(encode(g.elements[i]), static_cast<int>(i));

    const int n = static_cast<int>(g.elements.size());

    // inverses and element orders via the power walk x, x^2, ..., x^ord = 1
    g.inverse.assign(static_cast<std::size_t>(n), 0);
    std::vector<long> order(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i) {
        int prev = 0, cur = i;
        long k = 1;
        while (cur != 0) {
            prev = cur;
            cur = g.product(cur, i);
            ++k;
        }
        g.inverse[static_cast<std::size_t>(i)] = (i == 0) ? 0 : prev;
        order[static_cast<std::size_t>(i)] = (i == 0) ? 1 : k;
    }

    // conjugacy classes: orbit closure under conjugation, by generators when
    // available, otherwise by every element
    g.class_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> conjugators;
    if (!g.generator_indices.empty())
        conjugators = g.generator_indices;
    else {
        conjugators.resize(static_cast<std::size_t>(n));
        std::iota(conjugators.begin(), conjugators.end(), 0);
    }
    for (int start = 0; start < n; ++start) {
        if (g.class_of[static_cast<std::size_t>(start)] >= 0) continue;
        int cls = static_cast<int>(g.classes.size());
        ConjClass cc;
        cc.representative = start;
        std::deque<int> queue{start};
        g.class_of[static_cast<std::size_t>(start)] = cls;
        while (!queue.empty()) {
            int y = queue.front();
            queue.pop_front();
            cc.members.push_back(y);
            for (int s : conjugators) {
                int z = g.product(g.product(s, y), g.inverse[static_cast<std::size_t>(s)]);
                if (g.class_of[static_cast<std::size_t>(z)] < 0) {
                    g.class_of[static_cast<std::size_t>(z)] = cls;
                    queue.push_back(z);
                }
            }
        }
        std::sort(cc.members.begin(), cc.members.end());
        g.classes.push_back(std::move(cc));
    }

    g.exponent = 1;
    for (const auto& cc : g.classes)
        g.exponent = std::lcm(g.exponent, order[static_cast<std::size_t>(cc.representative)]);
    return g;
}

FiniteGroupData enumerate_group(const MatGroupSpec& spec, long long cap) {
    if (spec.modulus < 2) throw Error("modulus must be >= 2");
    if (spec.dim < 1) throw Error("dimension must be >= 1");
    const int d = spec.dim;
    const long m = spec.modulus;

    std::vector<Mat> gens;
    for (const auto& raw : spec.generators) {
        if (static_cast<int>(raw.size()) != d * d)
            throw Error("generator has wrong shape");
        std::vector<long> reduced(raw.size());
        Mat g(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            reduced[i] = mod_reduce(raw[i], m);
            g[i] = static_cast<uint32_t>(reduced[i]);
        }
        if (gcd_long(det_mod(reduced, d, m), m) != 1)
            throw NonInvertibleGenerator("generator determinant is not a unit mod " +
                                         std::to_string(m));
        gens.push_back(std::move(g));
    }

    FiniteGroupData scratch;
    scratch.modulus = m;
    scratch.dim = d;

    std::vector<Mat> elements{identity_mat(d)};
    std::unordered_map<std::string, int> seen{{encode(elements[0]), 0}};
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const Mat& gen : gens) {
            Mat next = scratch.multiply(elements[static_cast<std::size_t>(cur)], gen);
            std::string key = encode(next);
            if (seen.count(key)) continue;
            if (static_cast<long long>(elements.size()) >= cap)
                throw CapExceeded("enumeration exceeded cap " + std::to_string(cap));
            seen.emplace(std::move(key), static_cast<int>(elements.size()));
            queue.push_back(static_cast<int>(elements.size()));
            elements.push_back(std::move(next));
        }
    }

    std::vector<int> gen_indices;
    for (const Mat& gen : gens)
        gen_indices.push_back(seen.at(encode(gen)));

    return build_group_data(m, d, spec.label, std::move(elements), std::move(gen_indices), {});
}

namespace {

bool conjugation_stable(const FiniteGroupData& g, const std::vector<char>& member,
                        const std::vector<int>& subset) {
    std::vector<int> conjugators = g.generator_indices;
    if (conjugators.empty()) {
        conjugators.resize(g.elements.size());
        std::iota(conjugators.begin(), conjugators.end(), 0);
    }
    for (int s : conjugators) {
        int si = g.inverse[static_cast<std::size_t>(s)];
        for (int h : subset)
            if (!member[static_cast<std::size_t>(g.product(g.product(s, h), si))])
                return false;
    }
    return true;
}

} // namespace

SubgroupHandle subgroup_from_elements(const FiniteGroupData& g, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.empty() || indices.front() != g.identity())
        throw NotASubgroup("subset must contain the identity");
    std::vector<char> member(g.elements.size(), 0);
    for (int i : indices) {
        if (i < 0 || i >= static_cast<int>(g.elements.size()))
            throw NotASubgroup("element index out of range");
        member[static_cast<std::size_t>(i)] = 1;
    }
    bool whole = indices.size() == g.elements.size();
    if (!whole) {
        for (int a : indices)
            for (int b : indices)
                if (!member[static_cast<std::size_t>(g.product(a, b))])
                    throw NotASubgroup("subset is not closed under multiplication");
    }
    SubgroupHandle h;
    h.elements = std::move(indices);
    h.normal = whole || conjugation_stable(g, member, h.elements);
    return h;
}

SubgroupHandle reduction_kernel(const FiniteGroupData& g, long smaller_modulus) {
    if (smaller_modulus < 1 || g.modulus % smaller_modulus != 0)
        throw NotADivisor(std::to_string(smaller_modulus) + " does not divide " +
                          std::to_string(g.modulus));
    std::vector<int> idxs;
    const Mat id = identity_mat(g.dim);
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        bool in_kernel = true;
        for (std::size_t k = 0; k < id.size() && in_kernel; ++k)
            in_kernel = (static_cast<long>(g.elements[i][k]) - static_cast<long>(id[k])) %
                            smaller_modulus ==
                        0;
        if (in_kernel) idxs.push_back(static_cast<int>(i));
    }
    SubgroupHandle h = subgroup_from_elements(g, std::move(idxs));
    if (!h.normal) throw Error("congruence kernel failed conjugation stability"); // unreachable
    return h;
}

FiniteGroupData subgroup_group(const FiniteGroupData& g, const SubgroupHandle& h) {
    std::vector<Mat> elements;
    elements.reserve(h.elements.size());
    for (int i : h.elements) elements.push_back(g.elements[static_cast<std::size_t>(i)]);
    return build_group_data(g.modulus, g.dim, g.label + "|sub", std::move(elements), {},
                            h.elements);
}

// ---------------------------------------------------------------------------
// JSON group spec:
//   { "modulus": 9, "dim": 2, "label": "SL2(Z/9)",
//     "generators": [[[1,1],[0,1]], [[1,0],[1,1]]] }
// ---------------------------------------------------------------------------

MatGroupSpec group_spec_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("group JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("modulus") || !j.contains("dim") || !j.contains("generators"))
        throw InputError("group JSON requires \"modulus\", \"dim\", \"generators\"");
    MatGroupSpec spec;
    if (!j["modulus"].is_number_integer() || !j["dim"].is_number_integer())
        throw InputError("\"modulus\" and \"dim\" must be integers");
    spec.modulus = j["modulus"].get<long>();
    spec.dim = j["dim"].get<int>();
    spec.label = j.value("label", std::string{});
    if (!j["generators"].is_array()) throw InputError("\"generators\" must be an array");
    for (const auto& gen : j["generators"]) {
        if (!gen.is_array() || static_cast<int>(gen.size()) != spec.dim)
            throw InputError("each generator must be a dim x dim integer matrix");
        std::vector<long> flat;
        for (const auto& row : gen) {
            if (!row.is_array() || static_cast<int>(row.size()) != spec.dim)
                throw InputError("each generator must be a dim x dim integer matrix");
            for (const auto& v : row) {
                if (!v.is_number_integer()) throw InputError("matrix entries must be integers");
                flat.push_back(v.get<long>());
            }
        }
        spec.generators.push_back(std::move(flat));
    }
    return spec;
}

std::string group_spec_to_json_text(const MatGroupSpec& spec) {
    nlohmann::ordered_json j;
    j["modulus"] = spec.modulus;
    j["dim"] = spec.dim;
    j["label"] = spec.label;
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : spec.generators) {
        nlohmann::ordered_json mat = nlohmann::ordered_json::array();
        for (int r = 0; r < spec.dim; ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int c = 0; c < spec.dim; ++c)
                row.push_back(g[static_cast<std::size_t>(r) * static_cast<std::size_t>(spec.dim) +
                               static_cast<std::size_t>(c)]);
            mat.push_back(std::move(row));
        }
        j["generators"].push_back(std::move(mat));
    }
    return j.dump(2) + "\n";
}

} // namespace rzeta
