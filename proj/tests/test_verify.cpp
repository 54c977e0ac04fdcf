#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "laws.hpp"
#include "oracles.hpp"
#include "soa/json_io.hpp"
#include "soa/verify.hpp"

using namespace soa;

namespace {

FiniteMap map(std::size_t dom, std::size_t cod, std::vector<Elem> t) {
    return FiniteMap(FinSet{dom}, FinSet{cod}, std::move(t));
}

Presentation fixture(const char* name) {
    return load_presentation(oracle::fixture(name));
}

Certificate certify(const Presentation& p, ChainMode mode, const FiniteMap& f) {
    return make_certificate(factor(Engine::create(p, mode), ArrowObject(f)), "inline");
}

std::size_t count_of(const Report& r, const std::string& key) {
    for (const auto& [k, v] : r.counts) {
        if (k == key) {
            return v;
        }
    }
    FAIL("no count named " << key);
    return 0;
}

// Number of one-step liftings f -> g for generators without non-identity
// arrows: for each square u, the product over problems of the fillers.
std::size_t count_liftings(const Generators& gens, const ArrowObject& f, const ArrowObject& g) {
    std::size_t total = 0;
    for (const auto& u : laws::all_squares(f, g)) {
        std::size_t product = 1;
        for (const auto& U : gens.images) {
            for (const auto& sigma : laws::all_squares(U, f)) {
                std::size_t fillers = 0;
                for (const auto& phi : all_maps(U.bot(), g.top())) {
                    fillers += compose(phi, U.map()) == compose(u.top(), sigma.top()) &&
                                       compose(g.map(), phi) == compose(u.bot(), sigma.bot())
                                   ? 1
                                   : 0;
                }
                product *= fillers;
            }
        }
        total += product;
    }
    return total;
}

} // namespace

TEST_CASE("certificates from the fixtures verify") {
    struct Case {
        const char* fixture;
        ChainMode mode;
        FiniteMap f;
    };
    const Case cases[] = {
        {"gen_split_epi.json", ChainMode::plain, map(3, 2, {0, 1, 1})},
        {"gen_split_epi.json", ChainMode::special, map(3, 2, {0, 1, 1})},
        {"gen_abc.json", ChainMode::plain, map(1, 2, {0})},
        {"gen_abc.json", ChainMode::special, map(1, 2, {0})},
        {"gen_square.json", ChainMode::plain, map(2, 2, {0, 0})},
    };
    for (const auto& c : cases) {
        CAPTURE(c.fixture);
        Presentation p = fixture(c.fixture);
        Certificate cert = certify(p, c.mode, c.f);
        Report r = verify_certificate(p, cert);
        CHECK(r.ok());
        if (!r.ok()) {
            MESSAGE(r.to_string());
        }
    }
}

TEST_CASE("a corrupted β0 is caught at the corrupted element") {
    Presentation p = fixture("gen_split_epi.json");
    Certificate cert = certify(p, ChainMode::plain, map(3, 2, {0, 1, 1}));
    auto& r = cert.result;
    REQUIRE(r.R.map().table() == std::vector<Elem>{0, 1, 1, 0, 1});
    auto s = Engine::plain(p).t1().step(r.R);
    const Elem k0 = s->K(0);
    // 3 lies over the same point as 0, so β stays a square but fails the unit law
    std::vector<Elem> t = r.beta0.table();
    REQUIRE(t[k0] == 0);
    t[k0] = 3;
    r.beta0 = FiniteMap(r.beta0.dom(), r.beta0.cod(), t);
    Report report = check_algebra(p, cert);
    CHECK(report.failed("algebra-unit"));
    CHECK_FALSE(report.failed("algebra-structure"));
    CHECK(report.to_string().find("at element 0") != std::string::npos);
}

TEST_CASE("other corruptions") {
    Presentation p = fixture("gen_split_epi.json");
    const Certificate good = certify(p, ChainMode::plain, map(3, 2, {0, 1, 1}));

    Certificate missing = good;
    missing.result.lift_table.pop_back();
    CHECK(check_compat(p, missing).failed("lift-table-coverage"));

    Certificate staged = good;
    staged.result.stage = 2;
    CHECK(check_reproducible(p, staged).failed("reproducibility"));

    Certificate wide = good;
    wide.result.L = FiniteMap(FinSet{3}, FinSet{6}, wide.result.L.table());
    CHECK_FALSE(verify_certificate(p, wide).ok());
    CHECK(check_well_formed(p, wide).failed("well-formed"));
}

TEST_CASE("plain certificates can fail vertical compatibility") {
    Presentation p = fixture("gen_abc.json");
    const FiniteMap f = map(1, 2, {0});
    Certificate plain = certify(p, ChainMode::plain, f);
    Certificate special = certify(p, ChainMode::special, f);
    CHECK(check_compat(p, plain, false).ok());
    CHECK(check_compat(p, plain, true).failed("vertical-compatibility"));
    CHECK(check_compat(p, special).ok());
    CHECK(check_compat(p, special, true).ok());
}

TEST_CASE("κ on small examples") {
    Generators gens = fixture("gen_split_epi.json").level_one();
    ArrowObject id1(map(1, 1, {0}));
    Report r = oracle_kappa(gens, id1, id1);
    CHECK(r.ok());
    CHECK(count_of(r, "squares") == count_of(r, "liftings"));
    CHECK(count_of(r, "liftings") == count_liftings(gens, id1, id1));

    // no square reaches an arrow with empty top from one with nonempty top
    Report empty = oracle_kappa(gens, id1, ArrowObject(map(0, 1, {})));
    CHECK(empty.ok());
    CHECK(count_of(empty, "squares") == 0);
    CHECK(count_of(empty, "liftings") == 0);

    Report two = oracle_kappa(gens, id1, ArrowObject(map(2, 1, {0, 0})));
    CHECK(two.ok());
    CHECK(count_of(two, "liftings") == count_liftings(gens, id1, ArrowObject(map(2, 1, {0, 0}))));

    std::vector<Elem> t(3, 0);
    KappaOptions small;
    small.max_carrier = 2;
    CHECK_THROWS_AS(oracle_kappa(gens, ArrowObject(map(3, 1, t)), id1, small), SizeBudgetExceeded);
}

TEST_CASE("κ counts agree with direct enumeration") {
    Generators gens = fixture("gen_split_epi.json").level_one();
    auto arrows = small_arrows(2);
    // carriers 0..2 on both sides
    std::size_t expected = 0;
    for (std::size_t x = 0; x <= 2; ++x) {
        for (std::size_t y = 0; y <= 2; ++y) {
            expected += count_maps(FinSet{x}, FinSet{y});
        }
    }
    CHECK(arrows.size() == expected);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const ArrowObject& f = arrows[rng() % arrows.size()];
        const ArrowObject& g = arrows[rng() % arrows.size()];
        CAPTURE(f.to_string());
        CAPTURE(g.to_string());
        Report r = oracle_kappa(gens, f, g);
        CHECK(r.ok());
        CHECK(count_of(r, "squares") == laws::all_squares(Engine::plain(gens).t1().step(f)->T, g).size());
        CHECK(count_of(r, "liftings") == count_liftings(gens, f, g));
    }
}

TEST_CASE("initiality against hand-built algebras") {
    Presentation p = fixture("gen_split_epi.json");
    Certificate cert = certify(p, ChainMode::special, map(3, 2, {0, 1, 1}));
    // g = (2 -> 1); T₁g adds one point for the single problem of j, which β' sends to 0
    ArrowObject g(map(2, 1, {0, 0}));
    auto s = Engine::plain(p).t1().step(g);
    REQUIRE(s->S().size == 3);
    std::vector<Elem> beta(3, 0);
    for (Elem x = 0; x < 2; ++x) {
        beta[s->K(x)] = x;
    }
    std::vector<AlgebraTarget> targets{{g, FiniteMap(FinSet{3}, FinSet{2}, beta)}};
    Report r = oracle_initiality(p, cert, targets);
    CHECK(r.ok());
    // squares f -> g: any top table, the unique bottom
    CHECK(count_of(r, "squares") == 8);

    // β' that does not fix the image of K
    std::vector<Elem> bad = beta;
    bad[s->K(0)] = 1;
    std::vector<AlgebraTarget> wrong{{g, FiniteMap(FinSet{3}, FinSet{2}, bad)}};
    CHECK(oracle_initiality(p, cert, wrong).failed("initiality-precondition"));
}

TEST_CASE("reports are deterministic") {
    Presentation p = fixture("gen_abc.json");
    Certificate cert = certify(p, ChainMode::special, map(1, 2, {0}));
    CHECK(verify_certificate(p, cert).to_string() == verify_certificate(p, cert).to_string());
    Certificate plain = certify(p, ChainMode::plain, map(1, 2, {0}));
    CHECK(check_compat(p, plain, true).to_string() == check_compat(p, plain, true).to_string());
}
