#include "soa/verify.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace soa {

namespace {

std::string list(const std::vector<Elem>& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + std::to_string(t[i]);
    }
    return s + "]";
}

// First point where two maps with the same domain differ.
std::string first_difference(const FiniteMap& got, const FiniteMap& want) {
    if (got.dom() != want.dom() || got.cod() != want.cod()) {
        return "boundaries differ: " + got.to_string() + " vs " + want.to_string();
    }
    for (std::size_t x = 0; x < got.dom().size; ++x) {
        if (got(x) != want(x)) {
            return "at element " + std::to_string(x) + ": " + std::to_string(got(x)) + " vs " + std::to_string(want(x));
        }
    }
    return "equal";
}

void guarded(Report& report, const std::string& check, const std::function<void()>& body) {
    report.checks.push_back(check);
    try {
        body();
    } catch (const SizeBudgetExceeded&) {
        throw;
    } catch (const Error& e) {
        report.fail(check, std::string("could not be evaluated: ") + e.what());
    }
}

std::string problem_name(const Generators& gens, std::size_t gen, const FiniteMap& s0, const FiniteMap& s1) {
    return gens.shape.object_name(gen) + " σ0=" + list(s0.table()) + " σ1=" + list(s1.table());
}

bool commutes(const FiniteMap& g, const FiniteMap& u0, const FiniteMap& u1, const FiniteMap& f) {
    // g ∘ u0 == u1 ∘ f, pointwise without allocation
    for (std::size_t x = 0; x < f.dom().size; ++x) {
        if (g(u0(x)) != u1(f(x))) {
            return false;
        }
    }
    return true;
}

// All squares `U(gen) -> target`, enumerated from raw tables.
std::vector<std::pair<FiniteMap, FiniteMap>> raw_problems(const ArrowObject& U, const ArrowObject& target,
                                                          EnumerationCounter& counter) {
    std::vector<std::pair<FiniteMap, FiniteMap>> out;
    for_each_table(U.bot(), target.bot(), [&](const std::vector<Elem>& bot) {
        FiniteMap s1(U.bot(), target.bot(), bot);
        for_each_table(U.top(), target.top(), [&](const std::vector<Elem>& top) {
            counter.tick();
            FiniteMap s0(U.top(), target.top(), top);
            if (commutes(target.map(), s0, s1, U.map())) {
                out.emplace_back(std::move(s0), s1);
            }
        });
    });
    return out;
}

// Lift-table lookup keyed by (gen, σ0, σ1).
class LiftIndex {
  public:
    explicit LiftIndex(const std::vector<LiftEntry>& table) : table_(table) {
        for (std::size_t k = 0; k < table.size(); ++k) {
            auto key = problem_key(table[k].gen, table[k].sigma0, table[k].sigma1);
            auto [it, fresh] = index_.emplace(std::move(key), k);
            if (!fresh) {
                duplicates_.push_back(k);
            }
        }
    }

    const FiniteMap* find(std::size_t gen, const FiniteMap& s0, const FiniteMap& s1) const {
        auto it = index_.find(problem_key(gen, s0, s1));
        return it == index_.end() ? nullptr : &table_[it->second].filler;
    }

    const std::vector<std::size_t>& duplicates() const { return duplicates_; }

  private:
    const std::vector<LiftEntry>& table_;
    std::map<std::vector<Elem>, std::size_t> index_;
    std::vector<std::size_t> duplicates_;
};

} // namespace

TraceSummary summarise(const ChainTrace& trace) {
    TraceSummary s;
    for (const auto& X : trace.stages) {
        s.sizes.push_back({X.top().size, X.bot().size});
    }
    for (std::size_t n = 0; n < trace.connecting.size(); ++n) {
        s.iso.push_back(trace.is_iso(n));
    }
    return s;
}

Certificate make_certificate(const FactorOutcome& outcome, std::string presentation) {
    return {std::move(presentation), outcome.result, summarise(outcome.trace)};
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    counts.insert(counts.end(), other.counts.begin(), other.counts.end());
}

bool Report::failed(const std::string& check) const {
    for (const auto& f : failures) {
        if (f.check == check) {
            return true;
        }
    }
    return false;
}

std::string Report::to_string() const {
    std::ostringstream out;
    out << (ok() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, " << failures.size() << " failures)\n";
    for (const auto& [name, n] : counts) {
        out << "  " << name << " = " << n << "\n";
    }
    for (const auto& s : skipped) {
        out << "  skipped: " << s << "\n";
    }
    for (const auto& f : failures) {
        out << "  " << f.check << ": " << f.witness << "\n";
    }
    return out.str();
}

Report check_well_formed(const Presentation& pres, const Certificate& cert) {
    Report report;
    report.checks.push_back("well-formed");
    const auto& r = cert.result;
    auto bad = [&](const std::string& what) { report.fail("well-formed", what); };
    if (r.L.dom() != r.input.top() || r.L.cod() != r.R.top()) {
        bad("L is " + r.L.to_string() + ", expected " + std::to_string(r.input.top().size) + " -> " +
            std::to_string(r.R.top().size));
    }
    if (r.R.bot() != r.input.bot()) {
        bad("R ends at " + std::to_string(r.R.bot().size) + ", the input at " + std::to_string(r.input.bot().size));
    }
    if (r.beta0.cod() != r.R.top()) {
        bad("β0 does not land in Ef");
    }
    if (r.mode == ChainMode::special && !pres.is_double()) {
        bad("special-mode certificate for a presentation without vertical composition");
    }
    const auto& images = pres.umaps;
    for (std::size_t k = 0; k < r.lift_table.size(); ++k) {
        const auto& e = r.lift_table[k];
        if (e.gen >= images.size()) {
            bad("lift entry " + std::to_string(k) + " names an unknown generator");
            continue;
        }
        const FiniteMap& U = images[e.gen];
        if (e.sigma0.dom() != U.dom() || e.sigma0.cod() != r.R.top() || e.sigma1.dom() != U.cod() ||
            e.sigma1.cod() != r.R.bot() || e.filler.dom() != U.cod() || e.filler.cod() != r.R.top()) {
            bad("lift entry " + std::to_string(k) + " has mismatched boundaries");
        }
    }
    return report;
}

Report check_algebra(const Presentation& pres, const Certificate& cert, Budget budget) {
    Report report;
    const auto& r = cert.result;
    Engine engine = Engine::create(pres, r.mode, budget);
    const Generators& gens = engine.generators();

    guarded(report, "factorisation", [&] {
        FiniteMap RL = compose(r.R.map(), r.L);
        if (RL != r.input.map()) {
            report.fail("factorisation", "R ∘ L differs from f " + first_difference(RL, r.input.map()));
        }
    });

    auto sR = engine.t1().step(r.R);
    bool structure_ok = true;
    guarded(report, "algebra-structure", [&] {
        if (r.beta0.dom() != sR->S() || r.beta0.cod() != r.R.top()) {
            structure_ok = false;
            report.fail("algebra-structure", "β0 is " + r.beta0.to_string() + ", expected " +
                                                 std::to_string(sR->S().size) + " -> " + std::to_string(r.R.top().size));
            return;
        }
        FiniteMap lhs = compose(r.R.map(), r.beta0);
        if (lhs != sR->T.map()) {
            structure_ok = false;
            report.fail("algebra-structure", "R ∘ β0 differs from T₁R " + first_difference(lhs, sR->T.map()));
        }
    });
    if (!structure_ok) {
        report.skipped.push_back("algebra-unit, lifting-from-algebra, special-algebra: β is not a square");
        return report;
    }
    const CommSquare beta(sR->T, r.R, r.beta0, FiniteMap::identity(r.R.bot()));

    guarded(report, "algebra-unit", [&] {
        FiniteMap bk = compose(r.beta0, sR->K);
        if (!bk.is_identity()) {
            report.fail("algebra-unit", "β0 ∘ K differs from the identity " +
                                            first_difference(bk, FiniteMap::identity(r.R.top())));
        }
    });

    guarded(report, "lifting-from-algebra", [&] {
        for (const auto& e : r.lift_table) {
            if (e.gen >= gens.images.size()) {
                continue;
            }
            auto p = sR->comma.find(e.gen, e.sigma0, e.sigma1);
            if (!p) {
                report.fail("lifting-from-algebra",
                            "entry " + problem_name(gens, e.gen, e.sigma0, e.sigma1) + " is not a lifting problem");
                continue;
            }
            FiniteMap want = compose(r.beta0, sR->theta[*p]);
            if (e.filler != want) {
                report.fail("lifting-from-algebra", problem_name(gens, e.gen, e.sigma0, e.sigma1) +
                                                        ": filler differs from β0 ∘ θ " + first_difference(e.filler, want));
            }
        }
    });

    guarded(report, "generation", [&] {
        std::vector<bool> hit(r.R.top().size, false);
        for (Elem x : r.L.table()) {
            hit[x] = true;
        }
        for (const auto& e : r.lift_table) {
            if (e.filler.cod() == r.R.top()) {
                for (Elem x : e.filler.table()) {
                    hit[x] = true;
                }
            }
        }
        for (std::size_t x = 0; x < hit.size(); ++x) {
            if (!hit[x]) {
                report.fail("generation", "element " + std::to_string(x) + " of Ef is neither in the image of L nor of a filler");
            }
        }
    });

    if (r.mode != ChainMode::special) {
        report.skipped.push_back("special-algebra: plain-mode certificate");
        return report;
    }
    guarded(report, "special-algebra", [&] {
        const EndofunctorPair& two = engine.level_two();
        CommSquare lhs = square_compose(beta, two.gamma(r.R));
        CommSquare rhs = square_compose(beta, square_compose(engine.t1().apply(beta), two.lambda(r.R)));
        if (lhs != rhs) {
            report.fail("special-algebra", "β ∘ γ_R differs from β ∘ T₁β ∘ λ_R " + first_difference(lhs.top(), rhs.top()));
        }
    });
    return report;
}

Report check_compat(const Presentation& pres, const Certificate& cert, std::optional<bool> vertical, Budget budget) {
    Report report;
    const auto& r = cert.result;
    const Generators gens = pres.level_one();
    const LiftIndex index(r.lift_table);
    EnumerationCounter counter(budget.max_enumeration, "lifting problems against R");

    // problems[j] lists every square U(j) -> R.
    std::vector<std::vector<std::pair<FiniteMap, FiniteMap>>> problems(gens.images.size());
    std::size_t total = 0;
    for (std::size_t j = 0; j < gens.images.size(); ++j) {
        problems[j] = raw_problems(gens.images[j], r.R, counter);
        total += problems[j].size();
    }
    report.counts.emplace_back("problems", total);

    guarded(report, "lift-table-coverage", [&] {
        for (std::size_t j = 0; j < problems.size(); ++j) {
            for (const auto& [s0, s1] : problems[j]) {
                if (!index.find(j, s0, s1)) {
                    report.fail("lift-table-coverage", "no filler for " + problem_name(gens, j, s0, s1));
                }
            }
        }
        for (std::size_t k : index.duplicates()) {
            report.fail("lift-table-coverage", "duplicate entry " + std::to_string(k));
        }
        if (r.lift_table.size() != total + index.duplicates().size()) {
            report.fail("lift-table-coverage", std::to_string(r.lift_table.size()) + " entries for " +
                                                   std::to_string(total) + " problems");
        }
    });

    guarded(report, "filler", [&] {
        for (std::size_t j = 0; j < problems.size(); ++j) {
            const ArrowObject& U = gens.images[j];
            for (const auto& [s0, s1] : problems[j]) {
                const FiniteMap* phi = index.find(j, s0, s1);
                if (!phi) {
                    continue;
                }
                if (phi->dom() != U.bot() || phi->cod() != r.R.top()) {
                    report.fail("filler", problem_name(gens, j, s0, s1) + ": filler has the wrong boundary");
                    continue;
                }
                FiniteMap upper = compose(*phi, U.map());
                if (upper != s0) {
                    report.fail("filler", problem_name(gens, j, s0, s1) + ": upper triangle " + first_difference(upper, s0));
                }
                FiniteMap lower = compose(r.R.map(), *phi);
                if (lower != s1) {
                    report.fail("filler", problem_name(gens, j, s0, s1) + ": lower triangle " + first_difference(lower, s1));
                }
            }
        }
    });

    guarded(report, "horizontal-compatibility", [&] {
        for (std::size_t a = 0; a < gens.shape.num_arrows(); ++a) {
            if (gens.shape.is_identity(a)) {
                continue;
            }
            const auto& arrow = gens.shape.arrow(a);
            const CommSquare& Ua = gens.square_images[a];
            for (const auto& [s0, s1] : problems[arrow.cod]) {
                const FiniteMap* outer = index.find(arrow.cod, s0, s1);
                FiniteMap t0 = compose(s0, Ua.top());
                FiniteMap t1 = compose(s1, Ua.bot());
                const FiniteMap* inner = index.find(arrow.dom, t0, t1);
                if (!outer || !inner || outer->dom() != Ua.bot().cod()) {
                    continue;
                }
                FiniteMap lhs = compose(*outer, Ua.bot());
                if (lhs != *inner) {
                    report.fail("horizontal-compatibility", "square " + arrow.name + " at " +
                                                                problem_name(gens, arrow.cod, s0, s1) + ": " +
                                                                first_difference(lhs, *inner));
                }
            }
        }
    });

    const bool want_vertical = vertical.value_or(r.mode == ChainMode::special);
    if (!want_vertical) {
        report.skipped.push_back("vertical-compatibility: plain-mode certificate");
        return report;
    }
    guarded(report, "vertical-compatibility", [&] {
        const ComposablePairs cp = composable_pairs(pres);
        for (std::size_t k = 0; k < cp.pairs.size(); ++k) {
            const auto [first, second] = cp.pairs[k];
            const std::size_t m = cp.composite[k];
            const FiniteMap& Usecond = gens.images[second].map();
            for (const auto& [s0, s1] : problems[m]) {
                const FiniteMap* whole = index.find(m, s0, s1);
                const FiniteMap* lower_half = index.find(first, s0, compose(s1, Usecond));
                if (!whole || !lower_half || lower_half->cod() != r.R.top()) {
                    continue;
                }
                const FiniteMap* upper_half = index.find(second, *lower_half, s1);
                if (!upper_half) {
                    continue;
                }
                if (*whole != *upper_half) {
                    report.fail("vertical-compatibility", "pair (" + gens.shape.object_name(first) + ", " +
                                                              gens.shape.object_name(second) + ") at " +
                                                              problem_name(gens, m, s0, s1) + ": " +
                                                              first_difference(*whole, *upper_half));
                }
            }
        }
    });
    return report;
}

Report check_reproducible(const Presentation& pres, const Certificate& cert, Budget budget, std::size_t max_stage) {
    Report report;
    guarded(report, "reproducibility", [&] {
        const auto& r = cert.result;
        Engine engine = Engine::create(pres, r.mode, budget);
        FactorOutcome again = factor(engine, r.input, std::max(max_stage, r.stage));
        const auto& a = again.result;
        auto differs = [&](const std::string& what, const std::string& detail) {
            report.fail("reproducibility", what + " differs from a fresh run: " + detail);
        };
        if (a.stage != r.stage) {
            differs("stage", std::to_string(r.stage) + " vs " + std::to_string(a.stage));
        }
        if (a.R != r.R) {
            differs("R", first_difference(r.R.map(), a.R.map()));
        }
        if (a.L != r.L) {
            differs("L", first_difference(r.L, a.L));
        }
        if (a.beta0 != r.beta0) {
            differs("β0", first_difference(r.beta0, a.beta0));
        }
        const Generators& gens = engine.generators();
        const LiftIndex fresh(a.lift_table);
        if (a.lift_table.size() != r.lift_table.size()) {
            differs("lift table size", std::to_string(r.lift_table.size()) + " vs " + std::to_string(a.lift_table.size()));
        }
        for (const auto& e : r.lift_table) {
            const FiniteMap* want = e.gen < gens.images.size() ? fresh.find(e.gen, e.sigma0, e.sigma1) : nullptr;
            if (!want) {
                differs("lift table", "unexpected entry for generator " + std::to_string(e.gen));
            } else if (*want != e.filler) {
                differs("filler of " + problem_name(gens, e.gen, e.sigma0, e.sigma1), first_difference(e.filler, *want));
            }
        }
        if (cert.trace) {
            TraceSummary s = summarise(again.trace);
            bool same = s.iso == cert.trace->iso && s.sizes.size() == cert.trace->sizes.size();
            for (std::size_t k = 0; same && k < s.sizes.size(); ++k) {
                same = s.sizes[k].top == cert.trace->sizes[k].top && s.sizes[k].bot == cert.trace->sizes[k].bot;
            }
            if (!same) {
                differs("trace summary", "stage sizes or iso flags");
            }
        }
    });
    return report;
}

Report verify_certificate(const Presentation& pres, const Certificate& cert, Budget budget) {
    Report report = check_well_formed(pres, cert);
    if (!report.ok()) {
        report.skipped.push_back("remaining checks: certificate is not well-formed");
        return report;
    }
    report.merge(check_algebra(pres, cert, budget));
    report.merge(check_compat(pres, cert, std::nullopt, budget));
    report.merge(check_reproducible(pres, cert, budget));
    return report;
}

Report oracle_kappa(const Generators& gens, const ArrowObject& f, const ArrowObject& g, KappaOptions options) {
    for (FinSet s : {f.top(), f.bot(), g.top(), g.bot()}) {
        if (s.size > options.max_carrier) {
            throw SizeBudgetExceeded("oracle carriers are bounded by " + std::to_string(options.max_carrier));
        }
    }
    Report report;
    EnumerationCounter counter(options.budget.max_enumeration, "κ oracle enumeration");
    PointedEndofunctor T(gens, options.budget);
    auto s = T.step(f);
    const ArrowObject& Tf = s->T;

    // Problems of f, enumerated independently and located in the step's numbering.
    std::vector<std::size_t> order;
    guarded(report, "problem-enumeration", [&] {
        std::size_t total = 0;
        for (std::size_t j = 0; j < gens.images.size(); ++j) {
            for (const auto& [s0, s1] : raw_problems(gens.images[j], f, counter)) {
                ++total;
                auto p = s->comma.find(j, s0, s1);
                if (!p) {
                    report.fail("problem-enumeration", "step is missing " + problem_name(gens, j, s0, s1));
                } else {
                    order.push_back(*p);
                }
            }
        }
        if (total != s->comma.objects().size()) {
            report.fail("problem-enumeration", "step has " + std::to_string(s->comma.objects().size()) +
                                                   " problems, enumeration found " + std::to_string(total));
        }
    });
    if (!report.ok()) {
        return report;
    }
    const auto& problems = s->comma.objects();

    auto lifting_key = [](const OneStepLifting& l) {
        std::vector<Elem> key = l.u.top().table();
        key.insert(key.end(), l.u.bot().table().begin(), l.u.bot().table().end());
        for (const auto& phi : l.phi) {
            key.insert(key.end(), phi.table().begin(), phi.table().end());
        }
        return key;
    };

    // All squares Tf -> g.
    std::vector<CommSquare> squares;
    for_each_table(Tf.bot(), g.bot(), [&](const std::vector<Elem>& b) {
        FiniteMap u1(Tf.bot(), g.bot(), b);
        for_each_table(Tf.top(), g.top(), [&](const std::vector<Elem>& t) {
            counter.tick();
            FiniteMap t0(Tf.top(), g.top(), t);
            if (commutes(g.map(), t0, u1, Tf.map())) {
                squares.emplace_back(Tf, g, std::move(t0), u1);
            }
        });
    });

    // All one-step liftings f -> g: a square u with natural fillers for every problem.
    std::vector<OneStepLifting> liftings;
    for_each_table(f.bot(), g.bot(), [&](const std::vector<Elem>& b) {
        FiniteMap u1(f.bot(), g.bot(), b);
        for_each_table(f.top(), g.top(), [&](const std::vector<Elem>& t) {
            counter.tick();
            FiniteMap u0(f.top(), g.top(), t);
            if (!commutes(g.map(), u0, u1, f.map())) {
                return;
            }
            CommSquare u(f, g, u0, u1);
            std::vector<std::vector<FiniteMap>> candidates(problems.size());
            for (std::size_t p = 0; p < problems.size(); ++p) {
                const ArrowObject& U = gens.images[problems[p].gen];
                FiniteMap top = compose(u0, problems[p].top());
                FiniteMap bot = compose(u1, problems[p].bot());
                for_each_table(U.bot(), g.top(), [&](const std::vector<Elem>& phi) {
                    counter.tick();
                    FiniteMap cand(U.bot(), g.top(), phi);
                    if (compose(cand, U.map()) == top && compose(g.map(), cand) == bot) {
                        candidates[p].push_back(std::move(cand));
                    }
                });
            }
            std::vector<std::size_t> pick(problems.size(), 0);
            for (const auto& c : candidates) {
                if (c.empty()) {
                    return;
                }
            }
            while (true) {
                counter.tick();
                OneStepLifting l{u, {}};
                for (std::size_t p = 0; p < problems.size(); ++p) {
                    l.phi.push_back(candidates[p][pick[p]]);
                }
                bool natural = true;
                for (const auto& m : s->comma.morphisms()) {
                    if (compose(l.phi[m.dst], gens.square_images[m.gen_arrow].bot()) != l.phi[m.src]) {
                        natural = false;
                        break;
                    }
                }
                if (natural) {
                    liftings.push_back(std::move(l));
                }
                std::size_t i = pick.size();
                while (i > 0 && ++pick[i - 1] == candidates[i - 1].size()) {
                    pick[--i] = 0;
                }
                if (i == 0) {
                    break;
                }
            }
        });
    });

    report.counts.emplace_back("problems", problems.size());
    report.counts.emplace_back("squares", squares.size());
    report.counts.emplace_back("liftings", liftings.size());

    guarded(report, "kappa-cardinality", [&] {
        if (squares.size() != liftings.size()) {
            report.fail("kappa-cardinality", std::to_string(squares.size()) + " squares vs " +
                                                 std::to_string(liftings.size()) + " liftings");
        }
    });

    std::set<std::vector<Elem>> lifting_keys;
    for (const auto& l : liftings) {
        lifting_keys.insert(lifting_key(l));
    }
    guarded(report, "kappa-restrict-then-mediate", [&] {
        std::set<std::vector<Elem>> images;
        for (const auto& sq : squares) {
            OneStepLifting k{square_compose(sq, s->unit), {}};
            for (std::size_t p = 0; p < problems.size(); ++p) {
                k.phi.push_back(compose(sq.top(), s->theta[p]));
            }
            auto key = lifting_key(k);
            if (!lifting_keys.count(key)) {
                report.fail("kappa-restrict-then-mediate", "restriction of " + sq.to_string() + " is not a lifting");
                continue;
            }
            images.insert(key);
            if (mediate(*s, k) != sq) {
                report.fail("kappa-restrict-then-mediate", "mediating the restriction of " + sq.to_string() +
                                                               " does not return it");
            }
        }
        if (images.size() != squares.size()) {
            report.fail("kappa-restrict-then-mediate", "restriction is not injective");
        }
    });
    guarded(report, "kappa-mediate-then-restrict", [&] {
        for (const auto& l : liftings) {
            CommSquare sq = mediate(*s, l);
            if (square_compose(sq, s->unit) != l.u) {
                report.fail("kappa-mediate-then-restrict", "mediated square does not restrict to u = " + l.u.to_string());
                continue;
            }
            for (std::size_t p = 0; p < problems.size(); ++p) {
                if (compose(sq.top(), s->theta[p]) != l.phi[p]) {
                    report.fail("kappa-mediate-then-restrict", "mediated square changes the filler of problem " +
                                                                   std::to_string(p));
                    break;
                }
            }
        }
    });
    return report;
}

std::vector<ArrowObject> small_arrows(std::size_t max_carrier) {
    std::vector<ArrowObject> out;
    for (std::size_t x = 0; x <= max_carrier; ++x) {
        for (std::size_t y = 0; y <= max_carrier; ++y) {
            for_each_table(FinSet{x}, FinSet{y}, [&](const std::vector<Elem>& t) {
                out.emplace_back(FiniteMap(FinSet{x}, FinSet{y}, t));
            });
        }
    }
    return out;
}

Report oracle_initiality(const Presentation& pres, const Certificate& cert, std::span<const AlgebraTarget> targets,
                         Budget budget) {
    Report report;
    const auto& r = cert.result;
    Engine engine = Engine::create(pres, r.mode, budget);
    const PointedEndofunctor& T = engine.t1();
    EnumerationCounter counter(budget.max_enumeration, "initiality enumeration");
    auto sR = T.step(r.R);
    const CommSquare beta(sR->T, r.R, r.beta0, FiniteMap::identity(r.R.bot()));
    const ArrowObject& f = r.input;
    const FinSet E = r.R.top();

    std::size_t total_squares = 0;
    std::size_t accepted = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const ArrowObject& g = targets[t].g;
        const FiniteMap& b0 = targets[t].beta0;
        const std::string label = "target " + std::to_string(t);
        std::optional<CommSquare> gbeta;
        guarded(report, "initiality-precondition", [&] {
            auto sg = T.step(g);
            if (b0.dom() != sg->S() || b0.cod() != g.top()) {
                report.fail("initiality-precondition", label + ": β' has the wrong boundary");
                return;
            }
            if (compose(g.map(), b0) != sg->T.map()) {
                report.fail("initiality-precondition", label + ": β' is not a square T₁g -> g");
                return;
            }
            if (!compose(b0, sg->K).is_identity()) {
                report.fail("initiality-precondition", label + ": β' ∘ K is not the identity");
                return;
            }
            CommSquare candidate(sg->T, g, b0, FiniteMap::identity(g.bot()));
            if (r.mode == ChainMode::special) {
                const EndofunctorPair& two = engine.level_two();
                if (square_compose(candidate, two.gamma(g)) !=
                    square_compose(candidate, square_compose(T.apply(candidate), two.lambda(g)))) {
                    report.fail("initiality-precondition", label + ": β' is not a special algebra");
                    return;
                }
            }
            gbeta = candidate;
        });
        if (!gbeta) {
            continue;
        }
        ++accepted;
        guarded(report, "initiality", [&] {
            // Elements of Ef outside the image of L are free; the rest are forced by h0 ∘ L = u0.
            std::vector<bool> in_image(E.size, false);
            for (Elem x : r.L.table()) {
                in_image[x] = true;
            }
            std::vector<Elem> free_points;
            for (Elem e = 0; e < E.size; ++e) {
                if (!in_image[e]) {
                    free_points.push_back(e);
                }
            }
            for_each_table(f.bot(), g.bot(), [&](const std::vector<Elem>& b) {
                FiniteMap u1(f.bot(), g.bot(), b);
                for_each_table(f.top(), g.top(), [&](const std::vector<Elem>& top) {
                    counter.tick();
                    FiniteMap u0(f.top(), g.top(), top);
                    if (!commutes(g.map(), u0, u1, f.map())) {
                        return;
                    }
                    ++total_squares;
                    std::vector<Elem> forced(E.size, 0);
                    std::vector<bool> set(E.size, false);
                    bool consistent = true;
                    for (std::size_t x = 0; x < f.top().size; ++x) {
                        Elem e = r.L(x);
                        if (set[e] && forced[e] != u0(x)) {
                            consistent = false;
                        }
                        forced[e] = u0(x);
                        set[e] = true;
                    }
                    std::size_t extensions = 0;
                    if (consistent) {
                        for_each_table(FinSet{free_points.size()}, g.top(), [&](const std::vector<Elem>& rest) {
                            counter.tick();
                            std::vector<Elem> h = forced;
                            for (std::size_t k = 0; k < free_points.size(); ++k) {
                                h[free_points[k]] = rest[k];
                            }
                            FiniteMap h0(E, g.top(), std::move(h));
                            if (!commutes(g.map(), h0, u1, r.R.map())) {
                                return;
                            }
                            CommSquare hs(r.R, g, h0, u1);
                            if (square_compose(hs, beta) == square_compose(*gbeta, T.apply(hs))) {
                                ++extensions;
                            }
                        });
                    }
                    if (extensions != 1) {
                        report.fail("initiality", label + ", square u0=" + list(u0.table()) + " u1=" + list(u1.table()) +
                                                      ": " + std::to_string(extensions) + " algebra morphisms extend it");
                    }
                });
            });
        });
    }
    report.counts.emplace_back("targets", accepted);
    report.counts.emplace_back("squares", total_squares);
    return report;
}

} // namespace soa
