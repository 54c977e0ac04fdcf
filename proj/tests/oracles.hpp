#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond the FiniteMap value type.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "soa/finset.hpp"

#ifndef SOA_FIXTURE_DIR
#define SOA_FIXTURE_DIR "fixtures"
#endif

namespace oracle {

using soa::Elem;
using soa::FinSet;
using soa::FiniteMap;

inline std::string fixture(const std::string& name) {
    return std::string(SOA_FIXTURE_DIR) + "/" + name;
}

// Class labels of the equivalence relation generated by `pairs` on 0..n-1,
// computed by relabelling until nothing changes, then renumbered by least member.
inline std::vector<Elem> partition(std::size_t n, const std::vector<std::pair<Elem, Elem>>& pairs) {
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) {
        label[i] = i;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : pairs) {
            if (label[a] == label[b]) {
                continue;
            }
            const std::size_t lo = std::min(label[a], label[b]);
            const std::size_t hi = std::max(label[a], label[b]);
            for (auto& l : label) {
                if (l == hi) {
                    l = lo;
                }
            }
            changed = true;
        }
    }
    std::map<std::size_t, Elem> renumber;
    std::vector<Elem> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = renumber.find(label[i]);
        if (it == renumber.end()) {
            it = renumber.emplace(label[i], static_cast<Elem>(renumber.size())).first;
        }
        out[i] = it->second;
    }
    return out;
}

inline std::vector<Elem> coequalizer(const std::vector<std::pair<FiniteMap, FiniteMap>>& pairs, std::size_t cod) {
    std::vector<std::pair<Elem, Elem>> rel;
    for (const auto& [f, g] : pairs) {
        for (std::size_t a = 0; a < f.dom().size; ++a) {
            rel.emplace_back(f(a), g(a));
        }
    }
    return partition(cod, rel);
}

// Pushout of X <-f- A -g-> B as labels on X ⊔ B.
inline std::vector<Elem> pushout(const FiniteMap& f, const FiniteMap& g) {
    const std::size_t nx = f.cod().size;
    std::vector<std::pair<Elem, Elem>> rel;
    for (std::size_t a = 0; a < f.dom().size; ++a) {
        rel.emplace_back(f(a), static_cast<Elem>(nx + g(a)));
    }
    return partition(nx + g.cod().size, rel);
}

inline std::size_t classes(const std::vector<Elem>& labels) {
    Elem top = 0;
    for (Elem l : labels) {
        top = std::max<Elem>(top, l + 1);
    }
    return top;
}

inline FiniteMap random_map(std::mt19937_64& rng, std::size_t dom, std::size_t cod) {
    std::vector<Elem> t(dom);
    if (cod > 0) {
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(cod - 1));
        for (auto& v : t) {
            v = pick(rng);
        }
    }
    return FiniteMap(FinSet{dom}, FinSet{cod}, std::move(t));
}

// Random arrow X -> Y with 1 <= |X|, |Y| <= max_carrier.
inline FiniteMap random_arrow(std::mt19937_64& rng, std::size_t max_carrier) {
    std::uniform_int_distribution<std::size_t> size(1, max_carrier);
    const std::size_t x = size(rng);
    const std::size_t y = size(rng);
    return random_map(rng, x, y);
}

// Number of pairs (u0, u1) making the square from f to g commute.
inline std::size_t count_squares(const FiniteMap& f, const FiniteMap& g) {
    std::size_t n = 0;
    for (const auto& u1 : soa::all_maps(f.cod(), g.cod())) {
        for (const auto& u0 : soa::all_maps(f.dom(), g.dom())) {
            bool ok = true;
            for (std::size_t x = 0; x < f.dom().size && ok; ++x) {
                ok = g(u0(x)) == u1(f(x));
            }
            n += ok ? 1 : 0;
        }
    }
    return n;
}

} // namespace oracle
