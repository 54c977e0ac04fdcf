#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "soa/errors.hpp"
#include "soa/finset.hpp"

using namespace soa;

namespace {

FiniteMap map(std::size_t dom, std::size_t cod, std::vector<Elem> t) {
    return FiniteMap(FinSet{dom}, FinSet{cod}, std::move(t));
}

} // namespace

TEST_CASE("maps validate their tables") {
    CHECK_THROWS_AS(map(2, 2, {0}), InvalidMap);
    CHECK_THROWS_AS(map(2, 2, {0, 2}), InvalidMap);
    CHECK_NOTHROW(map(0, 0, {}));
    CHECK(FiniteMap::empty(FinSet{3}).dom().size == 0);
    CHECK(FiniteMap::constant(FinSet{3}, FinSet{2}, 1).table() == std::vector<Elem>{1, 1, 1});
}

TEST_CASE("composition is associative and unital") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = oracle::random_map(rng, 3, 4);
        auto g = oracle::random_map(rng, 4, 2);
        auto h = oracle::random_map(rng, 2, 5);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        CHECK(compose(FiniteMap::identity(f.cod()), f) == f);
        CHECK(compose(f, FiniteMap::identity(f.dom())) == f);
    }
    CHECK_THROWS_AS(compose(map(1, 1, {0}), map(1, 2, {1})), CompositionError);
}

TEST_CASE("injective, surjective and inverse") {
    auto f = map(3, 3, {2, 0, 1});
    CHECK(f.is_injective());
    CHECK(f.is_surjective());
    auto inv = is_iso(f);
    REQUIRE(inv);
    CHECK(compose(*inv, f).is_identity());
    CHECK(compose(f, *inv).is_identity());
    CHECK_FALSE(is_iso(map(2, 2, {0, 0})));
    CHECK_FALSE(is_iso(map(1, 2, {0})));
    CHECK(is_iso(map(0, 0, {})));
}

TEST_CASE("coequalisers agree with the closure oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::size_t> size(0, 6);
        const std::size_t a = size(rng);
        const std::size_t y = size(rng) + 1;
        const std::size_t npairs = 1 + trial % 3;
        std::vector<ParallelPair> pairs;
        std::vector<std::pair<FiniteMap, FiniteMap>> raw;
        for (std::size_t k = 0; k < npairs; ++k) {
            auto f = oracle::random_map(rng, a, y);
            auto g = oracle::random_map(rng, a, y);
            pairs.emplace_back(f, g);
            raw.emplace_back(f, g);
        }
        Quotient q = joint_coequalizer(pairs, FinSet{y});
        CHECK(q.projection().table() == oracle::coequalizer(raw, y));
        CHECK(q.apex().size == oracle::classes(oracle::coequalizer(raw, y)));
        for (const auto& [f, g] : pairs) {
            CHECK(compose(q.projection(), f) == compose(q.projection(), g));
        }
    }
}

TEST_CASE("quotient classes are numbered by least member") {
    Quotient q = coequalizer(map(1, 4, {3}), map(1, 4, {1}));
    CHECK(q.projection().table() == std::vector<Elem>{0, 1, 2, 1});
}

TEST_CASE("quotient factory") {
    Quotient q = coequalizer(map(1, 3, {0}), map(1, 3, {2}));
    auto h = map(3, 2, {1, 0, 1});
    auto hbar = q.induced(h);
    CHECK(compose(hbar, q.projection()) == h);
    CHECK_THROWS_AS(q.induced(map(3, 2, {0, 0, 1})), UniversalityError);
    CHECK_THROWS_AS(q.induced(map(2, 2, {0, 0})), CompositionError);
}

TEST_CASE("pushout of a span") {
    // X <- A -> B with A = 1, f = <0>: 1 -> 2, g: 1 -> 1 has two elements
    Pushout p = pushout(map(1, 2, {0}), map(1, 1, {0}));
    CHECK(p.apex().size == 2);
    CHECK(p.from_left().table() == std::vector<Elem>{0, 1});
    CHECK(p.from_right().table() == std::vector<Elem>{0});

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> size(0, 5);
        const std::size_t a = size(rng);
        const std::size_t x = size(rng) + 1;
        const std::size_t b = size(rng) + 1;
        auto f = oracle::random_map(rng, a, x);
        auto g = oracle::random_map(rng, a, b);
        Pushout q = pushout(f, g);
        auto labels = oracle::pushout(f, g);
        CHECK(q.apex().size == oracle::classes(labels));
        for (std::size_t i = 0; i < x; ++i) {
            CHECK(q.from_left()(i) == labels[i]);
        }
        for (std::size_t i = 0; i < b; ++i) {
            CHECK(q.from_right()(i) == labels[x + i]);
        }
        CHECK(compose(q.from_left(), f) == compose(q.from_right(), g));
    }
    CHECK_THROWS_AS(pushout(map(1, 1, {0}), map(2, 1, {0, 0})), DiagramError);
}

TEST_CASE("pushout factory") {
    Pushout p = pushout(map(1, 2, {0}), map(1, 2, {1}));
    auto hx = map(2, 3, {2, 0});
    auto hb = map(2, 3, {1, 2});
    auto h = p.induced(hx, hb);
    CHECK(compose(h, p.from_left()) == hx);
    CHECK(compose(h, p.from_right()) == hb);
    CHECK_THROWS_AS(p.induced(map(2, 3, {0, 0}), map(2, 3, {1, 1})), UniversalityError);
}

TEST_CASE("discrete colimits are coproducts") {
    Diagram d;
    d.vertices = {FinSet{2}, FinSet{0}, FinSet{3}};
    Colimit c = finite_colimit(d);
    CHECK(c.apex().size == 5);
    CHECK(c.leg(0).table() == std::vector<Elem>{0, 1});
    CHECK(c.leg(2).table() == std::vector<Elem>{2, 3, 4});
    std::vector<FiniteMap> cocone{map(2, 1, {0, 0}), map(0, 1, {}), map(3, 1, {0, 0, 0})};
    CHECK(c.induced(cocone, FinSet{1}).table() == std::vector<Elem>{0, 0, 0, 0, 0});
}

TEST_CASE("filtered colimit of a chain of injections") {
    // 1 -> 2 -> 3 -> 4, each the inclusion; the colimit is the last stage
    Diagram d;
    for (std::size_t n = 1; n <= 4; ++n) {
        d.vertices.push_back(FinSet{n});
    }
    for (std::size_t n = 1; n < 4; ++n) {
        std::vector<Elem> t(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = static_cast<Elem>(i);
        }
        d.edges.push_back({n - 1, n, map(n, n + 1, t)});
    }
    Colimit c = finite_colimit(d);
    CHECK(c.apex().size == 4);
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(c.leg(v).is_injective());
    }
    CHECK(is_iso(c.leg(3)));
}

TEST_CASE("colimits check edges and relations") {
    Diagram bad;
    bad.vertices = {FinSet{1}, FinSet{2}};
    bad.edges.push_back({0, 1, map(2, 2, {0, 1})});
    CHECK_THROWS_AS(finite_colimit(bad), DiagramError);

    Diagram rel;
    rel.vertices = {FinSet{1}, FinSet{2}, FinSet{2}};
    rel.edges.push_back({0, 1, map(1, 2, {0})});
    rel.edges.push_back({1, 2, map(2, 2, {1, 0})});
    rel.edges.push_back({0, 2, map(1, 2, {0})});
    rel.relations.push_back({0, 1, 2});
    CHECK_THROWS_AS(finite_colimit(rel), DiagramError);
    rel.edges[2].map = map(1, 2, {1});
    Colimit c = finite_colimit(rel);
    CHECK(c.apex().size == 2);
    CHECK_THROWS_AS(c.induced(std::vector<FiniteMap>{map(1, 2, {0}), map(2, 2, {0, 1}), map(2, 2, {0, 1})}, FinSet{2}),
                    UniversalityError);
}

TEST_CASE("enumerating maps") {
    CHECK(count_maps(FinSet{3}, FinSet{2}) == 8);
    CHECK(count_maps(FinSet{0}, FinSet{0}) == 1);
    CHECK(count_maps(FinSet{2}, FinSet{0}) == 0);
    CHECK(count_maps(FinSet{200}, FinSet{200}) == SIZE_MAX);
    auto maps = all_maps(FinSet{2}, FinSet{3});
    REQUIRE(maps.size() == 9);
    CHECK(maps.front().table() == std::vector<Elem>{0, 0});
    CHECK(maps[1].table() == std::vector<Elem>{0, 1});
    CHECK(maps.back().table() == std::vector<Elem>{2, 2});
    std::vector<std::vector<Elem>> visited;
    for_each_table(FinSet{2}, FinSet{3}, [&](const std::vector<Elem>& t) { visited.push_back(t); });
    REQUIRE(visited.size() == maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
        CHECK(visited[i] == maps[i].table());
    }
    std::size_t empty_domain = 0;
    for_each_table(FinSet{0}, FinSet{0}, [&](const std::vector<Elem>&) { ++empty_domain; });
    CHECK(empty_domain == 1);
}
