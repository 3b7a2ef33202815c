#include "blurshift/index_set.hpp"

#include <algorithm>
#include <limits>

#include "blurshift/symbol.hpp"

namespace blurshift {

namespace {

constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();
constexpr uint64_t kMaxPeriod = 1u << 20;

IndexSet::Seg flat(uint64_t lo, bool v) { return IndexSet::Seg{lo, 1, std::vector<bool>{v}}; }

uint64_t mod_i(__int128 v, uint64_t m) {
    __int128 r = v % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<uint64_t>(r);
}

}  // namespace

IndexSet::IndexSet() : segs_{flat(0, false)} {}
IndexSet::IndexSet(std::vector<Seg> segs) : segs_(std::move(segs)) { normalize(); }

IndexSet IndexSet::none() { return IndexSet(); }
IndexSet IndexSet::all() { return IndexSet({flat(0, true)}); }

IndexSet IndexSet::from(uint64_t n) {
    if (n == 0) return all();
    return IndexSet({flat(0, false), flat(n, true)});
}

IndexSet IndexSet::range(uint64_t lo, uint64_t hi) {
    if (hi < lo) return none();
    std::vector<Seg> s;
    s.push_back(flat(0, false));
    s.push_back(flat(lo, true));
    if (hi != kInf) s.push_back(flat(hi + 1, false));
    return IndexSet(std::move(s));
}

IndexSet IndexSet::point(uint64_t i) { return range(i, i); }

IndexSet IndexSet::residue(uint64_t m, uint64_t r) {
    if (m == 0) throw Error("BadResidue", "modulus must be at least 1");
    Seg s{0, m, std::vector<bool>(m, false)};
    s.bits[r % m] = true;
    return IndexSet({s});
}

IndexSet IndexSet::of(const std::vector<uint64_t>& members) {
    std::vector<uint64_t> m = members;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    std::vector<Seg> s{flat(0, false)};
    for (uint64_t v : m) {
        if (s.back().lo == v) s.back() = flat(v, true);
        else s.push_back(flat(v, true));
        if (v != kInf) s.push_back(flat(v + 1, false));
    }
    return IndexSet(std::move(s));
}

void IndexSet::normalize() {
    // minimal period per segment
    for (auto& s : segs_) {
        uint64_t L = s.period;
        for (uint64_t d = 1; d < L; ++d) {
            if (L % d) continue;
            bool ok = true;
            for (uint64_t j = d; j < L && ok; ++j) ok = s.bits[j] == s.bits[j % d];
            if (ok) {
                std::vector<bool> nb(s.bits.begin(), s.bits.begin() + static_cast<long>(d));
                s.bits = std::move(nb);
                s.period = d;
                break;
            }
        }
    }
    std::vector<Seg> out;
    for (size_t k = 0; k < segs_.size(); ++k) {
        uint64_t end = k + 1 < segs_.size() ? segs_[k + 1].lo : kInf;
        if (end <= segs_[k].lo) continue;
        if (!out.empty() && out.back().period == segs_[k].period && out.back().bits == segs_[k].bits) continue;
        out.push_back(segs_[k]);
    }
    if (out.empty() || out.front().lo != 0) out.insert(out.begin(), flat(0, false));
    segs_ = std::move(out);
}

size_t IndexSet::seg_index(uint64_t i) const {
    size_t lo = 0, hi = segs_.size();
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (segs_[mid].lo <= i) lo = mid;
        else hi = mid;
    }
    return lo;
}

uint64_t IndexSet::seg_end(size_t k) const { return k + 1 < segs_.size() ? segs_[k + 1].lo : kInf; }

bool IndexSet::contains(uint64_t i) const {
    const Seg& s = segs_[seg_index(i)];
    return s.bits[i % s.period];
}

bool IndexSet::infinite() const {
    const Seg& s = segs_.back();
    return std::find(s.bits.begin(), s.bits.end(), true) != s.bits.end();
}

bool IndexSet::cofinite() const {
    const Seg& s = segs_.back();
    return std::find(s.bits.begin(), s.bits.end(), false) == s.bits.end();
}

bool IndexSet::empty() const { return !next(0).has_value(); }

std::optional<uint64_t> IndexSet::next(uint64_t from) const {
    for (size_t k = seg_index(from); k < segs_.size(); ++k) {
        const Seg& s = segs_[k];
        uint64_t start = std::max(from, s.lo);
        uint64_t end = seg_end(k);
        for (uint64_t j = 0; j < s.period; ++j) {
            uint64_t p = start + j;
            if (p < start || p >= end) break;
            if (s.bits[p % s.period]) return p;
        }
    }
    return std::nullopt;
}

std::vector<uint64_t> IndexSet::elements(size_t cap) const {
    std::vector<uint64_t> out;
    uint64_t p = 0;
    while (out.size() < cap) {
        auto n = next(p);
        if (!n) break;
        out.push_back(*n);
        if (*n == kInf) break;
        p = *n + 1;
    }
    return out;
}

template <class F>
IndexSet IndexSet::combine(const IndexSet& a, const IndexSet& b, F f) {
    std::vector<uint64_t> cuts;
    for (auto& s : a.segs_) cuts.push_back(s.lo);
    for (auto& s : b.segs_) cuts.push_back(s.lo);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Seg> out;
    for (uint64_t c : cuts) {
        const Seg& sa = a.segs_[a.seg_index(c)];
        const Seg& sb = b.segs_[b.seg_index(c)];
        uint64_t L = lcm_u(sa.period, sb.period);
        if (L > kMaxPeriod) throw Error("Overflow", "residue period too large");
        Seg s{c, L, std::vector<bool>(L)};
        for (uint64_t j = 0; j < L; ++j) s.bits[j] = f(sa.bits[j % sa.period], sb.bits[j % sb.period]);
        out.push_back(std::move(s));
    }
    return IndexSet(std::move(out));
}

IndexSet IndexSet::operator|(const IndexSet& o) const { return combine(*this, o, [](bool x, bool y) { return x || y; }); }
IndexSet IndexSet::operator&(const IndexSet& o) const { return combine(*this, o, [](bool x, bool y) { return x && y; }); }
IndexSet IndexSet::operator-(const IndexSet& o) const { return combine(*this, o, [](bool x, bool y) { return x && !y; }); }
IndexSet IndexSet::complement() const { return all() - *this; }
bool IndexSet::same(const IndexSet& o) const { return combine(*this, o, [](bool x, bool y) { return x != y; }).empty(); }
bool IndexSet::subset_of(const IndexSet& o) const { return (*this - o).empty(); }

IndexSet IndexSet::preimage_affine(int64_t a, int64_t b) const {
    if (a < 0) throw Error("BadMap", "negative index slope");
    if (a == 0) return (b >= 0 && contains(static_cast<uint64_t>(b))) ? all() : none();
    std::vector<Seg> out{flat(0, false)};
    auto first_i = [&](uint64_t v) -> uint64_t {  // least i >= 0 with a*i+b >= v
        __int128 num = static_cast<__int128>(v) - b;
        if (num <= 0) return 0;
        return static_cast<uint64_t>((num + a - 1) / a);
    };
    for (size_t k = 0; k < segs_.size(); ++k) {
        const Seg& s = segs_[k];
        uint64_t ilo = first_i(s.lo);
        uint64_t end = seg_end(k);
        uint64_t ihi = end == kInf ? kInf : first_i(end);
        if (ihi <= ilo) continue;
        Seg n{ilo, s.period, std::vector<bool>(s.period)};
        for (uint64_t j = 0; j < s.period; ++j)
            n.bits[j] = s.bits[mod_i(static_cast<__int128>(a) * j + b, s.period)];
        if (out.back().lo == ilo) out.back() = n;
        else out.push_back(n);
    }
    return IndexSet(std::move(out));
}

IndexSet IndexSet::preimage_code(uint64_t t) const {
    auto code_at = [t](uint64_t i) -> unsigned __int128 {
        unsigned __int128 d = static_cast<unsigned __int128>(t) + i;
        return d * (d + 1) / 2 + i;
    };
    auto first_i = [&](uint64_t v) -> uint64_t {
        uint64_t lo = 0, hi = uint64_t{1} << 32;
        while (lo < hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            if (code_at(mid) >= v) hi = mid;
            else lo = mid + 1;
        }
        return lo;
    };
    std::vector<Seg> out{flat(0, false)};
    for (size_t k = 0; k < segs_.size(); ++k) {
        const Seg& s = segs_[k];
        uint64_t ilo = first_i(s.lo);
        uint64_t end = seg_end(k);
        uint64_t ihi = end == kInf ? kInf : first_i(end);
        if (ihi <= ilo) continue;
        uint64_t P = 2 * s.period;
        Seg n{ilo, P, std::vector<bool>(P)};
        for (uint64_t j = 0; j < P; ++j) n.bits[j] = s.bits[static_cast<uint64_t>(code_at(j) % s.period)];
        if (out.back().lo == ilo) out.back() = n;
        else out.push_back(n);
    }
    return IndexSet(std::move(out));
}

std::string IndexSet::describe() const {
    const Seg& s = segs_.back();
    std::vector<uint64_t> on;
    for (uint64_t j = 0; j < s.period; ++j)
        if (s.bits[j]) on.push_back(j);
    if (on.empty()) return "finite";
    if (on.size() == s.period) return "cofinite";
    if (on.size() == 1) return "residue " + std::to_string(on[0]) + " mod " + std::to_string(s.period);
    std::string out = "residues {";
    for (size_t k = 0; k < on.size(); ++k) out += (k ? "," : "") + std::to_string(on[k]);
    return out + "} mod " + std::to_string(s.period);
}

}  // namespace blurshift
