#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blurshift {

// Ultimately periodic subset of the naturals, stored as consecutive segments.
// Segment k covers [lo_k, lo_{k+1}) (the last one is unbounded); inside it,
// i is a member iff bits[i % period]. Closed under all boolean operations and
// under preimages of the index maps used by codes.
class IndexSet {
public:
    struct Seg {
        uint64_t lo = 0;
        uint64_t period = 1;
        std::vector<bool> bits{false};
    };

    IndexSet();  // empty
    static IndexSet none();
    static IndexSet all();
    static IndexSet from(uint64_t n);                 // [n, inf)
    static IndexSet range(uint64_t lo, uint64_t hi);  // [lo, hi] inclusive
    static IndexSet point(uint64_t i);
    static IndexSet residue(uint64_t m, uint64_t r);
    static IndexSet of(const std::vector<uint64_t>& members);

    bool contains(uint64_t i) const;
    bool empty() const;
    bool infinite() const;
    bool cofinite() const;

    IndexSet operator|(const IndexSet& o) const;
    IndexSet operator&(const IndexSet& o) const;
    IndexSet operator-(const IndexSet& o) const;
    IndexSet complement() const;
    bool same(const IndexSet& o) const;
    bool subset_of(const IndexSet& o) const;

    std::optional<uint64_t> next(uint64_t from) const;
    // Members in increasing order, at most cap of them.
    std::vector<uint64_t> elements(size_t cap) const;

    // {i : a*i + b in this}
    IndexSet preimage_affine(int64_t a, int64_t b) const;
    // {i : code(t, i) in this}
    IndexSet preimage_code(uint64_t t) const;

    // Short text for witnesses, describing the unbounded part.
    std::string describe() const;

    const std::vector<Seg>& segments() const { return segs_; }

private:
    explicit IndexSet(std::vector<Seg> segs);
    void normalize();
    size_t seg_index(uint64_t i) const;
    uint64_t seg_end(size_t k) const;  // UINT64_MAX for the last
    template <class F>
    static IndexSet combine(const IndexSet& a, const IndexSet& b, F f);

    std::vector<Seg> segs_;
};

}  // namespace blurshift
