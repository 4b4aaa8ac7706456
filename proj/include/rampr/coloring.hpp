#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rampr/padic.hpp"

namespace rampr {

struct ColoringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-image function built from digit-level primitives. The image size is
/// computable from the tree alone, so the number of colors of a derived
/// coloring never depends on the domain bound.
struct InvariantDescriptor {
    enum class Op { VpMod, Smod, LmMod, LmIterMod, ResMod, Tuple, PostMod };

    Op op = Op::ResMod;
    uint32_t p = 0;  // prime for VpMod/Smod, base for LmMod/LmIterMod
    uint32_t m = 0;  // modulus
    uint64_t k = 0;  // iteration count for LmIterMod
    std::vector<InvariantDescriptor> items; // Tuple children / PostMod inner

    static InvariantDescriptor vp_mod(uint32_t p, uint32_t m) {
        InvariantDescriptor d; d.op = Op::VpMod; d.p = p; d.m = m; return d;
    }
    static InvariantDescriptor smod(uint32_t p) {
        InvariantDescriptor d; d.op = Op::Smod; d.p = p; return d;
    }
    static InvariantDescriptor lm_mod(uint32_t base, uint32_t m) {
        InvariantDescriptor d; d.op = Op::LmMod; d.p = base; d.m = m; return d;
    }
    static InvariantDescriptor lm_iter_mod(uint32_t base, uint64_t k, uint32_t m) {
        InvariantDescriptor d; d.op = Op::LmIterMod; d.p = base; d.k = k; d.m = m; return d;
    }
    static InvariantDescriptor res_mod(uint32_t m) {
        InvariantDescriptor d; d.op = Op::ResMod; d.m = m; return d;
    }
    static InvariantDescriptor tuple(std::vector<InvariantDescriptor> parts) {
        InvariantDescriptor d; d.op = Op::Tuple; d.items = std::move(parts); return d;
    }
    static InvariantDescriptor post_mod(InvariantDescriptor inner, uint32_t m) {
        InvariantDescriptor d; d.op = Op::PostMod; d.m = m;
        d.items.push_back(std::move(inner));
        return d;
    }

    void validate() const {
        switch (op) {
        case Op::VpMod:
        case Op::Smod:
            if (!is_prime_u32(p)) throw ColoringError("descriptor: base must be prime");
            if (op == Op::VpMod && m < 1) throw ColoringError("descriptor: modulus must be >= 1");
            break;
        case Op::LmMod:
        case Op::LmIterMod:
            if (p < 2) throw ColoringError("descriptor: log base must be >= 2");
            if (m < 1) throw ColoringError("descriptor: modulus must be >= 1");
            if (op == Op::LmIterMod && k < 1)
                throw ColoringError("descriptor: iteration count must be >= 1");
            break;
        case Op::ResMod:
            if (m < 1) throw ColoringError("descriptor: modulus must be >= 1");
            break;
        case Op::Tuple:
            if (items.empty()) throw ColoringError("descriptor: empty tuple");
            for (const auto& d : items) d.validate();
            break;
        case Op::PostMod:
            if (m < 1) throw ColoringError("descriptor: modulus must be >= 1");
            if (items.size() != 1) throw ColoringError("descriptor: post-mod needs one child");
            items.front().validate();
            break;
        }
    }

    uint64_t image_size() const {
        switch (op) {
        case Op::VpMod: return m;
        case Op::Smod: return p - 1;
        case Op::LmMod: return m;
        case Op::LmIterMod: return m;
        case Op::ResMod: return m;
        case Op::Tuple: {
            uint64_t s = 1;
            for (const auto& d : items) {
                uint64_t f = d.image_size();
                if (f != 0 && s > UINT64_MAX / f)
                    throw ColoringError("descriptor: image size overflows");
                s *= f;
            }
            return s;
        }
        case Op::PostMod:
            return std::min<uint64_t>(m, items.front().image_size());
        }
        return 1;
    }

    /// Canonical slot of x in [0, image_size()), via the lexicographic
    /// enumeration of image tuples. Iterated logarithms may be undefined on
    /// small arguments; the slot folds to 0 there and `defined` reports it,
    /// which is what the separator search keys on.
    struct Slot {
        uint64_t index = 0;
        bool defined = true;
    };

    Slot eval(const BigInt& x) const {
        switch (op) {
        case Op::VpMod: return {vp(p, x) % m, true};
        case Op::Smod: return {static_cast<uint64_t>(smodp(p, x)) - 1, true};
        case Op::LmMod: return {lm(p, x) % m, true};
        case Op::LmIterMod: {
            auto r = lm_iter(p, k, x);
            if (!r) return {0, false};
            return {r->mod_u32(m), true};
        }
        case Op::ResMod: return {x.mod_u32(m), true};
        case Op::Tuple: {
            Slot out;
            for (const auto& d : items) {
                Slot s = d.eval(x);
                out.index = out.index * d.image_size() + s.index;
                out.defined = out.defined && s.defined;
            }
            return out;
        }
        case Op::PostMod: {
            Slot s = items.front().eval(x);
            return {s.index % image_size(), s.defined};
        }
        }
        return {};
    }

    std::string to_string() const {
        switch (op) {
        case Op::VpMod:
            return "vpmod(" + std::to_string(p) + "," + std::to_string(m) + ")";
        case Op::Smod:
            return "smod(" + std::to_string(p) + ")";
        case Op::LmMod:
            return "lmmod(" + std::to_string(p) + "," + std::to_string(m) + ")";
        case Op::LmIterMod:
            return "lmitermod(" + std::to_string(p) + "," + std::to_string(k) + "," +
                   std::to_string(m) + ")";
        case Op::ResMod:
            return "resmod(" + std::to_string(m) + ")";
        case Op::Tuple: {
            std::string s = "tuple(";
            for (size_t i = 0; i < items.size(); ++i) {
                if (i) s += ",";
                s += items[i].to_string();
            }
            return s + ")";
        }
        case Op::PostMod:
            return "postmod(" + items.front().to_string() + "," + std::to_string(m) + ")";
        }
        return {};
    }
};

inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// A total coloring of [1..N] with r colors. Every backing precomputes its
/// table at construction, so lookups are O(1) and concurrent reads are safe.
class Coloring {
public:
    enum class Backing { Explicit, Invariant, Product, Random };

    static Coloring explicit_table(std::vector<uint32_t> table, uint32_t r) {
        if (r < 1) throw ColoringError("coloring: need at least one color");
        for (uint32_t c : table)
            if (c >= r) throw ColoringError("coloring: table entry out of range");
        Coloring c;
        c.backing_ = Backing::Explicit;
        c.n_ = table.size();
        c.r_ = r;
        c.table_ = std::move(table);
        return c;
    }

    static Coloring from_invariant(const InvariantDescriptor& d, uint64_t N) {
        d.validate();
        uint64_t size = d.image_size();
        if (size < 1 || size > 1000000)
            throw ColoringError("coloring: descriptor image size out of range");
        Coloring c;
        c.backing_ = Backing::Invariant;
        c.n_ = N;
        c.r_ = static_cast<uint32_t>(size);
        c.descriptor_ = std::make_shared<InvariantDescriptor>(d);
        c.table_.resize(N);
        for (uint64_t n = 1; n <= N; ++n)
            c.table_[n - 1] = static_cast<uint32_t>(d.eval(BigInt(n)).index);
        return c;
    }

    /// Reproducible pseudorandom coloring: splitmix64 seeded once, one draw
    /// per point in increasing order, reduced mod r.
    static Coloring random(uint64_t seed, uint32_t r, uint64_t N) {
        if (r < 1) throw ColoringError("coloring: need at least one color");
        Coloring c;
        c.backing_ = Backing::Random;
        c.n_ = N;
        c.r_ = r;
        c.seed_ = seed;
        c.table_.resize(N);
        uint64_t state = seed;
        for (uint64_t n = 0; n < N; ++n)
            c.table_[n] = static_cast<uint32_t>(splitmix64_next(state) % r);
        return c;
    }

    static Coloring product(std::vector<Coloring> factors) {
        if (factors.empty()) throw ColoringError("coloring: empty product");
        uint64_t N = factors.front().n_;
        uint64_t r = 1;
        for (const auto& f : factors) {
            if (f.n_ != N) throw ColoringError("coloring: product factors disagree on bound");
            r *= f.r_;
            if (r > 1000000) throw ColoringError("coloring: product has too many colors");
        }
        Coloring c;
        c.backing_ = Backing::Product;
        c.n_ = N;
        c.r_ = static_cast<uint32_t>(r);
        c.table_.resize(N);
        for (uint64_t i = 0; i < N; ++i) {
            uint64_t idx = 0;
            for (const auto& f : factors)
                idx = idx * f.r_ + f.table_[i];
            c.table_[i] = static_cast<uint32_t>(idx);
        }
        c.factors_ = std::make_shared<std::vector<Coloring>>(std::move(factors));
        return c;
    }

    uint32_t color_of(uint64_t n) const {
        if (n < 1 || n > n_)
            throw ColoringError("coloring: point " + std::to_string(n) + " outside [1.." +
                                std::to_string(n_) + "]");
        return table_[n - 1];
    }

    uint64_t domain_bound() const { return n_; }
    uint32_t num_colors() const { return r_; }
    Backing backing() const { return backing_; }
    const InvariantDescriptor* descriptor() const { return descriptor_.get(); }
    uint64_t seed() const { return seed_; }
    const std::vector<uint32_t>& table() const { return table_; }
    const std::vector<Coloring>* factors() const { return factors_.get(); }

    /// Compact self-description for reports and round-tripping.
    std::string describe() const {
        switch (backing_) {
        case Backing::Explicit: {
            std::string s = "explicit:";
            if (n_ <= 64 && r_ <= 10) {
                for (uint32_t c : table_) s += static_cast<char>('0' + c);
            } else {
                s += "<" + std::to_string(n_) + " entries, " + std::to_string(r_) + " colors>";
            }
            return s;
        }
        case Backing::Invariant: return descriptor_->to_string();
        case Backing::Random:
            return "random(" + std::to_string(seed_) + "," + std::to_string(r_) + ")";
        case Backing::Product: {
            std::string s = "product(";
            for (size_t i = 0; i < factors_->size(); ++i) {
                if (i) s += ";";
                s += (*factors_)[i].describe();
            }
            return s + ")";
        }
        }
        return {};
    }

private:
    Backing backing_ = Backing::Explicit;
    uint64_t n_ = 0;
    uint32_t r_ = 1;
    uint64_t seed_ = 0;
    std::vector<uint32_t> table_;
    std::shared_ptr<InvariantDescriptor> descriptor_;
    std::shared_ptr<std::vector<Coloring>> factors_;
};

namespace detail {

inline void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline uint64_t parse_uint(std::string_view s, size_t& i) {
    skip_ws(s, i);
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw ColoringError("coloring spec: expected a number in '" + std::string(s) + "'");
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        v = v * 10 + (s[i++] - '0');
    return v;
}

inline void expect_char(std::string_view s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw ColoringError(std::string("coloring spec: expected '") + c + "' in '" +
                            std::string(s) + "'");
    ++i;
}

inline InvariantDescriptor parse_descriptor(std::string_view s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    std::string head(s.substr(start, i - start));
    if (head.empty()) throw ColoringError("coloring spec: expected a descriptor name");
    expect_char(s, i, '(');
    InvariantDescriptor d;
    if (head == "vpmod" || head == "lmmod") {
        uint32_t a = static_cast<uint32_t>(parse_uint(s, i));
        expect_char(s, i, ',');
        uint32_t b = static_cast<uint32_t>(parse_uint(s, i));
        d = head == "vpmod" ? InvariantDescriptor::vp_mod(a, b)
                            : InvariantDescriptor::lm_mod(a, b);
    } else if (head == "smod") {
        d = InvariantDescriptor::smod(static_cast<uint32_t>(parse_uint(s, i)));
    } else if (head == "resmod") {
        d = InvariantDescriptor::res_mod(static_cast<uint32_t>(parse_uint(s, i)));
    } else if (head == "lmitermod") {
        uint32_t base = static_cast<uint32_t>(parse_uint(s, i));
        expect_char(s, i, ',');
        uint64_t k = parse_uint(s, i);
        expect_char(s, i, ',');
        uint32_t m = static_cast<uint32_t>(parse_uint(s, i));
        d = InvariantDescriptor::lm_iter_mod(base, k, m);
    } else if (head == "tuple") {
        std::vector<InvariantDescriptor> parts;
        parts.push_back(parse_descriptor(s, i));
        while (true) {
            skip_ws(s, i);
            if (i < s.size() && s[i] == ',') {
                ++i;
                parts.push_back(parse_descriptor(s, i));
            } else {
                break;
            }
        }
        d = InvariantDescriptor::tuple(std::move(parts));
    } else if (head == "postmod") {
        InvariantDescriptor inner = parse_descriptor(s, i);
        expect_char(s, i, ',');
        uint32_t m = static_cast<uint32_t>(parse_uint(s, i));
        d = InvariantDescriptor::post_mod(std::move(inner), m);
    } else {
        throw ColoringError("coloring spec: unknown descriptor '" + head + "'");
    }
    expect_char(s, i, ')');
    return d;
}

} // namespace detail

inline InvariantDescriptor parse_descriptor_spec(std::string_view s) {
    size_t i = 0;
    InvariantDescriptor d = detail::parse_descriptor(s, i);
    detail::skip_ws(s, i);
    if (i != s.size()) throw ColoringError("coloring spec: trailing input");
    d.validate();
    return d;
}

/// Build a coloring of [1..N] from a compact spec string:
///   mono | parity | random(seed,r) | explicit:0110... | any descriptor
inline Coloring parse_coloring_spec(std::string_view spec, uint64_t N) {
    if (spec == "mono")
        return Coloring::explicit_table(std::vector<uint32_t>(N, 0), 1);
    if (spec == "parity")
        return Coloring::from_invariant(InvariantDescriptor::res_mod(2), N);
    if (spec.rfind("explicit:", 0) == 0) {
        std::string_view digits = spec.substr(9);
        std::vector<uint32_t> table;
        uint32_t r = 1;
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw ColoringError("coloring spec: explicit table digits must be 0-9");
            table.push_back(static_cast<uint32_t>(c - '0'));
            r = std::max(r, table.back() + 1);
        }
        if (table.size() != N)
            throw ColoringError("coloring spec: explicit table length differs from bound");
        return Coloring::explicit_table(std::move(table), r);
    }
    if (spec.rfind("random(", 0) == 0) {
        size_t i = 7;
        uint64_t seed = detail::parse_uint(spec, i);
        detail::expect_char(spec, i, ',');
        uint32_t r = static_cast<uint32_t>(detail::parse_uint(spec, i));
        detail::expect_char(spec, i, ')');
        return Coloring::random(seed, r, N);
    }
    return Coloring::from_invariant(parse_descriptor_spec(spec), N);
}

} // namespace rampr
