#pragma once

// Finite formal linear combinations over Q(zeta_N) with ordered basis keys.

#include "tva/cyclotomic.hpp"

#include <functional>
#include <map>
#include <utility>

namespace tva {

template <class Key, class Compare = std::less<Key>>
class LinearCombination {
public:
    using key_type = Key;
    using Map = std::map<Key, Cyclotomic, Compare>;
    using const_iterator = typename Map::const_iterator;

    LinearCombination() = default;
    explicit LinearCombination(Key k, Cyclotomic c = Cyclotomic(1)) { add(std::move(k), c); }

    void add(const Key& k, const Cyclotomic& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const LinearCombination& o, const Cyclotomic& scale = Cyclotomic(1)) {
        add_sorted(o, [](const Key& k) -> const Key& { return k; }, scale);
    }

    /// Adds scale * o with keys mapped by a strictly order-preserving f, as a linear merge.
    template <class OtherKey, class OtherCompare, class F>
    void add_sorted(const LinearCombination<OtherKey, OtherCompare>& o, F&& f, const Cyclotomic& scale = Cyclotomic(1)) {
        if (scale.is_zero() || o.is_zero()) return;
        const auto& less = terms_.key_comp();
        auto hint = terms_.end();
        bool first = true;
        for (const auto& [k, c] : o) {
            Key key = f(k);
            if (first) {
                hint = terms_.lower_bound(key);
                first = false;
            } else {
                while (hint != terms_.end() && less(hint->first, key)) ++hint;
            }
            const Cyclotomic v = scale.is_one() ? c : c * scale;
            if (hint != terms_.end() && !less(key, hint->first)) {
                auto cur = hint++;
                cur->second += v;
                if (cur->second.is_zero()) terms_.erase(cur);
            } else {
                terms_.emplace_hint(hint, std::move(key), v);
            }
        }
    }

    [[nodiscard]] Cyclotomic coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Cyclotomic() : it->second;
    }

    void erase(const Key& k) { terms_.erase(k); }

    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] const_iterator begin() const noexcept { return terms_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return terms_.end(); }
    [[nodiscard]] const Map& terms() const noexcept { return terms_; }

    LinearCombination& operator+=(const LinearCombination& o) {
        add(o);
        return *this;
    }
    LinearCombination& operator-=(const LinearCombination& o) {
        add(o, Cyclotomic(-1));
        return *this;
    }
    LinearCombination& operator*=(const Cyclotomic& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
    friend LinearCombination operator*(const Cyclotomic& s, LinearCombination a) { return a *= s; }
    friend LinearCombination operator*(LinearCombination a, const Cyclotomic& s) { return a *= s; }
    LinearCombination operator-() const { return Cyclotomic(-1) * *this; }

    friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }

    /// Applies a key-to-combination map linearly.
    template <class F>
    [[nodiscard]] auto map_linear(F&& f) const {
        using Result = std::invoke_result_t<F, const Key&>;
        Result out;
        for (const auto& [k, c] : terms_) out.add(f(k), c);
        return out;
    }

private:
    Map terms_;
};

}  // namespace tva
