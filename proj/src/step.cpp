#include "soa/step.hpp"

#include "soa/errors.hpp"

namespace soa {

namespace {

// Advances `digits` as a mixed-radix counter, last position fastest.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) {
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

std::vector<Elem> arrow_key(const ArrowObject& f) {
    std::vector<Elem> key;
    key.reserve(f.top().size + 2);
    key.push_back(static_cast<Elem>(f.top().size));
    key.push_back(static_cast<Elem>(f.bot().size));
    key.insert(key.end(), f.map().table().begin(), f.map().table().end());
    return key;
}

} // namespace

void EnumerationCounter::tick(std::size_t n) {
    count_ += n;
    if (count_ > limit_) {
        throw SizeBudgetExceeded(what_ + " exceeds the enumeration budget of " + std::to_string(limit_));
    }
}

std::size_t VectorHash::operator()(const std::vector<Elem>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Elem e : v) {
        h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::vector<Elem> problem_key(std::size_t gen, const FiniteMap& top, const FiniteMap& bot) {
    std::vector<Elem> key;
    key.reserve(3 + top.table().size() + bot.table().size());
    key.push_back(static_cast<Elem>(gen));
    key.push_back(static_cast<Elem>(top.table().size()));
    key.insert(key.end(), top.table().begin(), top.table().end());
    key.insert(key.end(), bot.table().begin(), bot.table().end());
    return key;
}

CommaCategory::CommaCategory(ArrowObject target, std::vector<LiftingProblem> objects, std::vector<Morphism> morphisms)
    : target_(std::move(target)), objects_(std::move(objects)), morphisms_(std::move(morphisms)) {
    for (std::size_t p = 0; p < objects_.size(); ++p) {
        index_.emplace(problem_key(objects_[p].gen, objects_[p].top(), objects_[p].bot()), p);
    }
}

std::optional<std::size_t> CommaCategory::find(std::size_t gen, const FiniteMap& top, const FiniteMap& bot) const {
    auto it = index_.find(problem_key(gen, top, bot));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const FiniteMap& StepStructure::theta_of(std::size_t gen, const FiniteMap& top, const FiniteMap& bot) const {
    auto p = comma.find(gen, top, bot);
    if (!p) {
        throw ProblemMismatch("(" + top.to_string() + ", " + bot.to_string() + ") is not a problem of generator " +
                              std::to_string(gen) + " against " + input.to_string());
    }
    return theta[*p];
}

PointedEndofunctor::PointedEndofunctor(Generators gens, Budget budget) : gens_(std::move(gens)), budget_(budget) {}

CommaCategory PointedEndofunctor::comma_category(const ArrowObject& f) const {
    const FinSet X = f.top();
    const FinSet Y = f.bot();
    std::vector<std::vector<Elem>> fiber(Y.size);
    for (Elem x = 0; x < X.size; ++x) {
        fiber[f.map()(x)].push_back(x);
    }

    EnumerationCounter counter(budget_.max_enumeration, "lifting problems against " + f.to_string());
    std::vector<LiftingProblem> objects;
    const auto& shape = gens_.shape;
    for (std::size_t j = 0; j < shape.num_objects(); ++j) {
        const ArrowObject& U = gens_.images[j];
        const FinSet A = U.top();
        const FinSet B = U.bot();
        if (Y.size == 0 && B.size > 0) {
            continue;
        }
        std::vector<std::size_t> bot_digits(B.size, 0);
        const std::vector<std::size_t> bot_radix(B.size, Y.size);
        do {
            counter.tick();
            std::vector<Elem> bot(bot_digits.begin(), bot_digits.end());
            // σ0 ranges over sections of the fibres of f over σ1 ∘ U.
            std::vector<const std::vector<Elem>*> choices(A.size);
            std::vector<std::size_t> top_radix(A.size);
            bool empty_fiber = false;
            for (Elem a = 0; a < A.size; ++a) {
                choices[a] = &fiber[bot[U.map()(a)]];
                top_radix[a] = choices[a]->size();
                empty_fiber = empty_fiber || top_radix[a] == 0;
            }
            if (empty_fiber) {
                continue;
            }
            FiniteMap sigma1(B, Y, bot);
            std::vector<std::size_t> top_digits(A.size, 0);
            do {
                counter.tick();
                std::vector<Elem> top(A.size);
                for (Elem a = 0; a < A.size; ++a) {
                    top[a] = (*choices[a])[top_digits[a]];
                }
                objects.push_back({j, CommSquare(U, f, FiniteMap(A, X, std::move(top)), sigma1)});
            } while (advance(top_digits, top_radix));
        } while (advance(bot_digits, bot_radix));
    }

    CommaCategory partial(f, objects, {});
    std::vector<CommaCategory::Morphism> morphisms;
    for (std::size_t a = 0; a < shape.num_arrows(); ++a) {
        if (shape.is_identity(a)) {
            continue;
        }
        const auto& arrow = shape.arrow(a);
        const CommSquare& Ua = gens_.square_images[a];
        for (std::size_t p = 0; p < objects.size(); ++p) {
            if (objects[p].gen != arrow.cod) {
                continue;
            }
            auto src = partial.find(arrow.dom, compose(objects[p].top(), Ua.top()), compose(objects[p].bot(), Ua.bot()));
            if (!src) {
                throw InvariantViolation("comma category is not closed under precomposition");
            }
            morphisms.push_back({*src, p, a});
        }
    }
    return CommaCategory(f, std::move(objects), std::move(morphisms));
}

std::shared_ptr<const StepStructure> PointedEndofunctor::step(const ArrowObject& f) const {
    auto key = arrow_key(f);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
    }
    auto computed = compute(f);
    std::lock_guard lock(mutex_);
    return cache_.emplace(std::move(key), std::move(computed)).first->second;
}

std::size_t PointedEndofunctor::cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

std::shared_ptr<const StepStructure> PointedEndofunctor::compute(const ArrowObject& f) const {
    auto s = std::make_shared<StepStructure>();
    s->input = f;
    s->comma = comma_category(f);
    const auto& problems = s->comma.objects();

    ArrowDiagram diagram;
    diagram.vertices.reserve(problems.size());
    for (const auto& p : problems) {
        diagram.vertices.push_back(gens_.images[p.gen]);
    }
    for (const auto& m : s->comma.morphisms()) {
        diagram.edges.push_back({m.src, m.dst, gens_.square_images[m.gen_arrow]});
    }
    s->density = arrow_colimit(diagram);

    std::vector<CommSquare> sigmas;
    sigmas.reserve(problems.size());
    for (const auto& p : problems) {
        sigmas.push_back(p.square);
    }
    s->counit = s->density.induced(sigmas, f);

    const ArrowObject& C = s->Cf();
    s->pushout = pushout(s->counit.top(), C.map());
    s->K = s->pushout.from_left();
    s->q = s->pushout.from_right();
    s->T = ArrowObject(s->pushout.induced(f.map(), s->counit.bot()));
    s->unit = CommSquare(f, s->T, s->K, FiniteMap::identity(f.bot()));
    s->pushout_unit = CommSquare(C, ArrowObject(s->K), s->counit.top(), s->q);

    s->theta.reserve(problems.size());
    for (std::size_t p = 0; p < problems.size(); ++p) {
        s->theta.push_back(compose(s->q, s->density.leg(p).bot()));
    }
    return s;
}

CommSquare mediate(const StepStructure& step, const OneStepLifting& lifting) {
    const CommSquare& u = lifting.u;
    if (u.src() != step.input) {
        throw LiftingError("lifting starts at " + u.src().to_string() + ", expected " + step.input.to_string());
    }
    const auto& problems = step.comma.objects();
    if (lifting.phi.size() != problems.size()) {
        throw LiftingError("lifting has " + std::to_string(lifting.phi.size()) + " fillers for " +
                           std::to_string(problems.size()) + " problems");
    }
    const ArrowObject& g = u.dst();
    for (std::size_t p = 0; p < problems.size(); ++p) {
        const auto& sigma = problems[p].square;
        const FiniteMap& phi = lifting.phi[p];
        if (phi.dom() != sigma.src().bot() || phi.cod() != g.top() ||
            compose(phi, sigma.src().map()) != compose(u.top(), sigma.top()) ||
            compose(g.map(), phi) != compose(u.bot(), sigma.bot())) {
            throw LiftingError("filler " + phi.to_string() + " does not fill the image of problem " + std::to_string(p));
        }
    }
    FiniteMap phibar;
    try {
        phibar = step.density.bot().induced(lifting.phi, g.top());
    } catch (const UniversalityError& e) {
        throw NonNaturalLifting(std::string("fillers are not natural in generator squares: ") + e.what());
    }
    FiniteMap t;
    try {
        t = step.pushout.induced(u.top(), phibar);
    } catch (const UniversalityError& e) {
        throw LiftingError(std::string("fillers disagree with the square on the generator tops: ") + e.what());
    }
    return CommSquare(step.T, g, t, u.bot());
}

OneStepLifting canonical_lifting(const StepStructure& step) {
    return {step.unit, step.theta};
}

CommSquare PointedEndofunctor::apply(const CommSquare& alpha) const {
    auto sf = step(alpha.src());
    auto sg = step(alpha.dst());
    OneStepLifting lifting{square_compose(sg->unit, alpha), {}};
    lifting.phi.reserve(sf->comma.objects().size());
    for (const auto& p : sf->comma.objects()) {
        lifting.phi.push_back(sg->theta_of(p.gen, compose(alpha.top(), p.top()), compose(alpha.bot(), p.bot())));
    }
    return mediate(*sf, lifting);
}

std::vector<std::string> step_violations(const Generators& gens, const StepStructure& s) {
    std::vector<std::string> out;
    const ArrowObject& f = s.input;
    if (compose(s.T.map(), s.K) != f.map()) {
        out.push_back("Tf ∘ Kf differs from f");
    }
    if (compose(s.T.map(), s.q) != s.counit.bot()) {
        out.push_back("Tf ∘ q differs from the counit");
    }
    for (std::size_t p = 0; p < s.comma.objects().size(); ++p) {
        const auto& prob = s.comma.objects()[p];
        const ArrowObject& U = gens.images[prob.gen];
        if (compose(s.theta[p], U.map()) != compose(s.K, prob.top()) ||
            compose(s.T.map(), s.theta[p]) != prob.bot()) {
            out.push_back("θ does not fill problem " + std::to_string(p));
        }
    }
    for (const auto& m : s.comma.morphisms()) {
        const CommSquare& Ua = gens.square_images[m.gen_arrow];
        if (compose(s.theta[m.dst], Ua.bot()) != s.theta[m.src]) {
            out.push_back("θ is not natural along " + gens.shape.arrow(m.gen_arrow).name + " at problem " +
                          std::to_string(m.dst));
        }
    }
    return out;
}

EndofunctorPair::EndofunctorPair(const Presentation& pres, Budget budget)
    : pairs_(std::make_shared<const ComposablePairs>(composable_pairs(pres))),
      t1_(std::make_shared<PointedEndofunctor>(pres.level_one(), budget)),
      t2_(std::make_shared<PointedEndofunctor>(pairs_->generators, budget)) {}

CommSquare EndofunctorPair::gamma(const ArrowObject& f) const {
    auto s1 = t1_->step(f);
    auto s2 = t2_->step(f);
    OneStepLifting lifting{s1->unit, {}};
    lifting.phi.reserve(s2->comma.objects().size());
    for (const auto& p : s2->comma.objects()) {
        lifting.phi.push_back(s1->theta_of(pairs_->composite[p.gen], p.top(), p.bot()));
    }
    return mediate(*s2, lifting);
}

CommSquare EndofunctorPair::lambda(const ArrowObject& f) const {
    auto s1 = t1_->step(f);
    auto s11 = t1_->step(s1->T);
    auto s2 = t2_->step(f);
    const auto& images = t1_->generators().images;
    OneStepLifting lifting{square_compose(s11->unit, s1->unit), {}};
    lifting.phi.reserve(s2->comma.objects().size());
    for (const auto& p : s2->comma.objects()) {
        const auto [first, second] = pairs_->pairs[p.gen];
        const FiniteMap& inner = s1->theta_of(first, p.top(), compose(p.bot(), images[second].map()));
        lifting.phi.push_back(s11->theta_of(second, inner, p.bot()));
    }
    return mediate(*s2, lifting);
}

} // namespace soa
