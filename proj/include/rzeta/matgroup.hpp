#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rzeta/errors.hpp"

namespace rzeta {

/// Generating data for a finite matrix group over Z/m.
struct MatGroupSpec {
    long modulus = 0;
    int dim = 0;
    std::vector<std::vector<long>> generators; // row-major dim*dim entries
    std::string label;
};

MatGroupSpec group_spec_from_json_text(const std::string& text);
std::string group_spec_to_json_text(const MatGroupSpec& spec);

/// Row-major reduced entries in [0, modulus).
using Mat = std::vector<uint32_t>;

struct ConjClass {
    int representative;       // minimal element index in the class
    std::vector<int> members; // ascending element indices
};

/// Fully enumerated finite matrix group. Element 0 is the identity; element
/// order is BFS discovery order for enumerated groups and ascending parent
/// index for subgroups. Immutable after construction; safe for concurrent
/// reads.
class FiniteGroupData {
public:
    long modulus = 0;
    int dim = 0;
    std::string label;
    std::vector<Mat> elements;
    std::vector<int> inverse;            // inverse[i] is the index of elements[i]^-1
    std::vector<int> generator_indices;  // empty for subgroup-built data
    std::vector<ConjClass> classes;
    std::vector<int> class_of;
    long exponent = 1;
    std::vector<int> to_parent;          // empty for root groups

    long long order() const { return static_cast<long long>(elements.size()); }
    int identity() const { return 0; }

    /// Index of a reduced encoding, or -1.
    int index_of(const Mat& m) const;

    /// Index of elements[a] * elements[b].
    int product(int a, int b) const;

    Mat multiply(const Mat& a, const Mat& b) const;

private:
    std::unordered_map<std::string, int> lookup_;
    friend FiniteGroupData build_group_data(long modulus, int dim, std::string label,
                                            std::vector<Mat> elements,
                                            std::vector<int> generator_indices,
                                            std::vector<int> to_parent);
};

/// Breadth-first closure of the generators. Deterministic element order.
/// Throws NonInvertibleGenerator or CapExceeded.
FiniteGroupData enumerate_group(const MatGroupSpec& spec, long long cap = 200000);

/// Subset of parent element indices, sorted ascending, with verification bits.
struct SubgroupHandle {
    std::vector<int> elements;
    bool normal = false;
};

/// Elements congruent to the identity mod smaller_modulus. Throws NotADivisor.
SubgroupHandle reduction_kernel(const FiniteGroupData& g, long smaller_modulus);

/// Wraps an element subset after checking closure (NotASubgroup if it fails)
/// and recording conjugation stability.
SubgroupHandle subgroup_from_elements(const FiniteGroupData& g, std::vector<int> indices);

/// Standalone group data for a subgroup; elements keep the parent's encodings
/// and the to_parent map records the index translation.
FiniteGroupData subgroup_group(const FiniteGroupData& g, const SubgroupHandle& h);

/// The class partition (computed at construction time).
inline const std::vector<ConjClass>& conjugacy_classes(const FiniteGroupData& g) {
    return g.classes;
}

} // namespace rzeta
