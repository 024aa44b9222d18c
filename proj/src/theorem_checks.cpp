#include "novikov/theorem_checks.hpp"

#include <algorithm>
#include <chrono>

#include "novikov/cohomology.hpp"
#include "novikov/error.hpp"
#include "novikov/linalg.hpp"
#include "novikov/models.hpp"

namespace novikov {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_;
};

std::size_t at(const std::vector<std::size_t>& v, int k) { return k < 0 || k >= static_cast<int>(v.size()) ? 0 : v[k]; }

json matrix_json(const SparseMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.to_dense()) {
        json row = json::array();
        for (const auto& v : r) row.push_back(v.to_fraction_string());
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json coords_json(const std::vector<std::vector<Rational>>& c) {
    json out = json::array();
    for (const auto& block : c) {
        json b = json::array();
        for (const auto& v : block) b.push_back(v.to_fraction_string());
        out.push_back(std::move(b));
    }
    return out;
}

Rational random_gauge_value(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(1, 9);
    int p = d(rng);
    int q = d(rng);
    return Rational(p, q);
}

bool same_system_base(const LocalSystem& s, const ComplexPtr& c) { return s.base() && c && (s.base() == c || *s.base() == *c); }

} // namespace

void CheckReport::settle() {
    failing_degrees.clear();
    std::size_t n = std::max(expected.size(), computed.size());
    for (std::size_t k = 0; k < n; ++k)
        if (at(expected, static_cast<int>(k)) != at(computed, static_cast<int>(k))) failing_degrees.push_back(static_cast<int>(k));
    if (!failing_degrees.empty() || expected.size() != computed.size()) pass = false;
}

json to_json(const CheckReport& r, bool with_timing) {
    json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["expected"] = r.expected;
    j["computed"] = r.computed;
    j["failing_degrees"] = r.failing_degrees;
    if (r.seed) j["seed"] = *r.seed;
    j["details"] = r.details;
    j["wall_time_ms"] = with_timing ? static_cast<std::int64_t>(r.wall_time_ms) : 0;
    return j;
}

// ---------------------------------------------------------------------------

CheckReport check_main_theorem(const MainTheoremInstance& inst) {
    Stopwatch clock;
    if (inst.r < 2) throw Error(ErrorCode::IncoherentInstance, "codimension r must be at least 2");
    if (!inst.x || !inst.xtilde) throw Error(ErrorCode::IncoherentInstance, "X and X~ must be given");
    if (!same_system_base(inst.x_system, inst.x)) throw Error(ErrorCode::IncoherentInstance, "system on X lives on another complex");
    if (!same_system_base(inst.xtilde_system, inst.xtilde))
        throw Error(ErrorCode::IncoherentInstance, "system on X~ lives on another complex");
    if (inst.xtilde->dimension() != inst.x->dimension()) throw Error(ErrorCode::IncoherentInstance, "X and X~ have different dimensions");
    if (inst.z && !(inst.z->parent() == inst.x || *inst.z->parent() == *inst.x))
        throw Error(ErrorCode::IncoherentInstance, "Z is not a subcomplex of X");

    CheckReport r;
    r.check = "main-theorem";
    r.instance = inst.label;
    const int top = inst.x->dimension();
    auto bx = betti(inst.x, inst.x_system, false).betti;
    auto bxt = betti(inst.xtilde, inst.xtilde_system, false).betti;
    std::vector<std::size_t> bz;
    if (inst.z && !inst.z->empty()) {
        // Z carries the restriction of the system on X
        LocalSystem zs = pullback_system(inst.z->inclusion(), inst.x_system);
        bz = betti(inst.z->complex(), zs, false).betti;
    }

    json rows = json::array();
    for (int k = 0; k <= top; ++k) {
        std::size_t shift = 0;
        for (int j = 1; j <= inst.r - 1; ++j) shift += at(bz, k - 2 * j);
        r.expected.push_back(at(bx, k) + shift);
        r.computed.push_back(at(bxt, k));
        rows.push_back({{"k", k}, {"xtilde", at(bxt, k)}, {"x", at(bx, k)}, {"z_shift", shift}});
    }
    r.details["dims"] = std::move(rows);
    r.details["betti_z"] = bz;
    r.settle();

    if (inst.e) {
        if (!same_system_base(inst.e_system, inst.e)) throw Error(ErrorCode::IncoherentInstance, "system on E lives on another complex");
        auto be = betti(inst.e, inst.e_system, false).betti;
        json erows = json::array();
        bool ok = true;
        for (int k = 0; k <= inst.e->dimension(); ++k) {
            std::size_t shift = 0;
            for (int j = 1; j <= inst.r - 1; ++j) shift += at(bz, k - 2 * j);
            long lhs = static_cast<long>(at(be, k)) - static_cast<long>(at(bz, k));
            bool eq = lhs == static_cast<long>(shift);
            ok = ok && eq;
            erows.push_back({{"k", k}, {"e", at(be, k)}, {"z", at(bz, k)}, {"z_shift", shift}, {"holds", eq}});
        }
        r.details["exceptional_divisor"] = std::move(erows);
        if (!ok) r.pass = false;
    }
    r.wall_time_ms = clock.ms();
    return r;
}

CheckReport check_proj_bundle(const std::string& label, const ComplexPtr& x, const LocalSystem& s, int m, std::mt19937_64& rng,
                              int samples) {
    Stopwatch clock;
    CheckReport r;
    r.check = "proj-bundle";
    r.instance = label;
    Model fiber = projective_space(m);
    LerayHirsch lh(x, s, fiber.complex, *fiber.descriptor.h_generator, m);
    const auto& base = lh.base_cohomology().groups().betti();
    const auto& total = lh.total_cohomology().groups().betti();
    const int top = static_cast<int>(total.size()) - 1;
    for (int k = 0; k <= top; ++k) {
        std::size_t sum = 0;
        for (int j = 0; j <= m; ++j) sum += at(base, k - 2 * j);
        r.expected.push_back(sum);
        r.computed.push_back(total[k]);
    }
    r.settle();

    // Pi_j round trip: x = sum c_ji h^j u pr1^* alpha_i + delta(y)
    std::vector<int> degrees;
    for (int k = 0; k <= top; ++k)
        if (lh.basis_size(k) > 0) degrees.push_back(k);
    std::uniform_int_distribution<int> coeff(-3, 3);
    json trips = json::array();
    bool all_ok = true;
    for (int t = 0; t < samples; ++t) {
        int k = degrees.empty() ? 0 : degrees[std::uniform_int_distribution<std::size_t>(0, degrees.size() - 1)(rng)];
        std::vector<std::vector<Rational>> c(m + 1);
        for (int j = 0; j <= m; ++j) {
            int d = k - 2 * j;
            std::size_t n = d < 0 ? 0 : lh.base_cohomology().betti(d);
            for (std::size_t i = 0; i < n; ++i) c[j].push_back(Rational(coeff(rng)));
        }
        SparseVector xk = lh.reassemble(k, c);
        if (k > 0) {
            const auto& groups = lh.total_cohomology().groups();
            std::size_t n = groups.cochain_dim(k - 1);
            std::uniform_int_distribution<std::size_t> where(0, n - 1);
            std::vector<Entry> y;
            for (int e = 0; e < 6; ++e) y.push_back({static_cast<Index>(where(rng)), Rational(coeff(rng))});
            xk = xk + groups.apply(k - 1, SparseVector(std::move(y)));
        }
        bool ok = true;
        std::string why;
        try {
            auto pi = lh.project(k, xk);
            if (pi != c) {
                ok = false;
                why = "coordinates differ from the construction";
            }
            SparseVector back = lh.reassemble(k, pi);
            if (!lh.total_cohomology().groups().is_coboundary(k, back - xk)) {
                ok = false;
                why = "reassembled class is not cohomologous";
            }
            json trip = {{"k", k}, {"pi", coords_json(pi)}, {"ok", ok}};
            if (!ok) trip["reason"] = why;
            trips.push_back(std::move(trip));
        } catch (const Error& e) {
            ok = false;
            trips.push_back({{"k", k}, {"ok", false}, {"reason", e.what()}});
        }
        all_ok = all_ok && ok;
    }
    r.details["base_betti"] = base;
    r.details["round_trips"] = std::move(trips);
    if (!all_ok) r.pass = false;
    r.wall_time_ms = clock.ms();
    return r;
}

CheckReport check_pullback_injectivity(const std::string& label, const SimplicialMap& f, const LocalSystem& s) {
    Stopwatch clock;
    CheckReport r;
    r.check = "injectivity";
    r.instance = label;
    auto mats = pullback_on_cohomology(f, s);
    json witnesses = json::array();
    for (std::size_t k = 0; k < mats.size(); ++k) {
        r.expected.push_back(mats[k].cols());
        r.computed.push_back(rank(mats[k]));
        witnesses.push_back({{"k", k}, {"matrix", matrix_json(mats[k])}});
    }
    r.details["pullback_matrices"] = std::move(witnesses);
    r.settle();
    r.wall_time_ms = clock.ms();
    return r;
}

CheckReport check_gauge_invariance(const std::string& label, const ComplexPtr& c, const LocalSystem& s, int trials,
                                   std::mt19937_64& rng) {
    Stopwatch clock;
    CheckReport r;
    r.check = "gauge";
    r.instance = label;
    r.expected = betti(c, s, false).betti;
    r.computed = r.expected;
    json runs = json::array();
    for (int t = 0; t < trials; ++t) {
        std::vector<Rational> g;
        for (std::size_t v = 0; v < c->vertex_count(); ++v) g.push_back(random_gauge_value(rng));
        LocalSystem gs = gauge_transform(s, g);
        auto b = betti(c, gs, false).betti;
        runs.push_back({{"fingerprint", gs.fingerprint()}, {"betti", b}});
        if (b != r.expected) {
            r.computed = b;
            break;
        }
    }
    r.details["trials"] = std::move(runs);
    r.settle();
    r.wall_time_ms = clock.ms();
    return r;
}

CheckReport check_les_and_ladder(const std::string& label, const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s) {
    Stopwatch clock;
    CheckReport r;
    r.check = "les";
    r.instance = label;
    PairLES les = assemble_les(x, z, s);
    auto rel = relative_betti(x, z, s, false).betti;

    // LES chase: dim H^k(X,Z) = dim ker i*_k ... via im j_k = ker i*_k and im d_{k-1} = coker i*_{k-1}
    json rows = json::array();
    bool bookkeeping = true;
    for (int k = 0; k <= les.top_degree(); ++k) {
        std::size_t ri = rank(les.restriction[k]);
        std::size_t ker_i = les.absolute[k] - ri;
        std::size_t coker_prev = k > 0 ? les.sub[k - 1] - rank(les.restriction[k - 1]) : 0;
        r.expected.push_back(ker_i + coker_prev);
        r.computed.push_back(at(rel, k));
        std::size_t coker_i = les.sub[k] - ri;
        bool ok = coker_i == rank(les.connecting[k]) && ker_i == rank(les.j[k]);
        bookkeeping = bookkeeping && ok;
        rows.push_back({{"k", k},
                        {"relative", les.relative[k]},
                        {"absolute", les.absolute[k]},
                        {"sub", les.sub[k]},
                        {"rank_j", rank(les.j[k])},
                        {"rank_restriction", ri},
                        {"rank_connecting", rank(les.connecting[k])},
                        {"coker_restriction", coker_i},
                        {"ker_restriction", ker_i},
                        {"consistent", ok}});
    }
    r.details["degrees"] = std::move(rows);
    json nodes = json::array();
    for (bool e : les.exact_at) nodes.push_back(e);
    r.details["exact_at"] = std::move(nodes);
    r.details["alternating_sum"] = les.alternating_sum();
    r.settle();
    if (!les.exact() || les.alternating_sum() != 0 || !bookkeeping) r.pass = false;
    if (!r.pass) {
        json maps = json::array();
        for (int k = 0; k <= les.top_degree(); ++k)
            maps.push_back({{"k", k},
                            {"j", matrix_json(les.j[k])},
                            {"restriction", matrix_json(les.restriction[k])},
                            {"connecting", matrix_json(les.connecting[k])}});
        r.details["witness_maps"] = std::move(maps);
    }
    r.wall_time_ms = clock.ms();
    return r;
}

CheckReport check_ladder(const std::string& label, const LadderInstance& l, bool expect_violation) {
    Stopwatch clock;
    CheckReport r;
    r.check = "coker-ladder";
    r.instance = label;
    CokerReport cr = check_coker_ladder(l);
    r.details["status"] = to_string(cr.status);
    r.details["violated_hypotheses"] = cr.violated_hypotheses;
    r.details["top_dims"] = l.top.dims;
    r.details["bottom_dims"] = l.bottom.dims;
    if (cr.status == CokerReport::Status::Ok || cr.status == CokerReport::Status::ConclusionFailed) {
        r.expected = {cr.coker_i2};
        r.computed = {cr.coker_i3};
        r.details["induced_iso"] = cr.induced_iso;
        if (!cr.induced_iso) r.details["induced"] = matrix_json(cr.induced);
    }
    r.settle();
    if (expect_violation) r.pass = cr.status == CokerReport::Status::HypothesisViolated;
    else r.pass = r.pass && cr.status == CokerReport::Status::Ok;
    if (!cr.detail.empty()) r.details["detail"] = cr.detail;
    r.wall_time_ms = clock.ms();
    return r;
}

// ---------------------------------------------------------------------------

LocalSystem default_generic_system(const ComplexPtr& c) {
    if (loop_basis(c).empty()) return LocalSystem::trivial(c);
    return generic_system(c, {Rational(2)});
}

MainTheoremInstance main_instance_cp2_point() {
    auto x = build_model("cp2").complex;
    auto xt = build_model("blowup_cp2_standin").complex;
    Subcomplex z = subcomplex(x, std::vector<Simplex>{{0}}, SelectMode::Strict);
    MainTheoremInstance inst{"cp2 / pt / S2xS2, r=2, trivial", x, LocalSystem::trivial(x), z, xt, LocalSystem::trivial(xt), 2, {}, {}};
    auto e = cp1();
    inst.e = e;
    inst.e_system = LocalSystem::trivial(e);
    return inst;
}

MainTheoremInstance main_instance_surface_cp2() {
    auto s2 = build_model("surface", {2}).complex;
    LocalSystem L = default_generic_system(s2);
    Product x = product(s2, build_model("cp2").complex);
    Product xt = product(s2, build_model("blowup_cp2_standin").complex);
    Product e = product(s2, build_model("cp1").complex);
    Subcomplex z = product_slice(x, 1, 0);
    return {"surface(2)xcp2 / surface(2)x{pt} / surface(2)xS2xS2, r=2, generic",
            x.complex,
            pullback_system(x.pr1, L),
            z,
            xt.complex,
            pullback_system(xt.pr1, L),
            2,
            e.complex,
            pullback_system(e.pr1, L)};
}

MainTheoremInstance main_instance_empty(const ComplexPtr& x, const LocalSystem& s) {
    std::string name = x->name().empty() ? "X" : x->name();
    return {name + " / empty / " + name + ", r=2", x, s, std::nullopt, x, s, 2, {}, {}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"main-theorem", "proj-bundle", "gauge", "les", "coker-ladder", "injectivity"};
    return names;
}

bool is_suite(const std::string& name) {
    return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

namespace {

struct SuiteRunner {
    const SuiteOptions& options;
    std::vector<CheckReport>& out;
    bool stopped = false;

    template <class F>
    void run(F&& f) {
        if (stopped) return;
        CheckReport r = f();
        bool failed = !r.pass;
        out.push_back(std::move(r));
        if (failed && options.stop_on_failure) stopped = true;
    }
};

void suite_main(SuiteRunner& run) {
    run.run([] { return check_main_theorem(main_instance_cp2_point()); });
    if (!run.options.quick) run.run([] { return check_main_theorem(main_instance_surface_cp2()); });
    run.run([] {
        auto x = build_model("cp2").complex;
        return check_main_theorem(main_instance_empty(x, LocalSystem::trivial(x)));
    });
    run.run([] {
        auto x = build_model("surface", {2}).complex;
        return check_main_theorem(main_instance_empty(x, default_generic_system(x)));
    });
}

void suite_proj(SuiteRunner& run) {
    std::mt19937_64 rng(run.options.seed);
    std::vector<std::pair<std::string, ComplexPtr>> bases = {
        {"point", build_model("point").complex},
        {"circle(3)", build_model("circle", {3}).complex},
        {"surface(2)", build_model("surface", {2}).complex},
    };
    for (const auto& [name, x] : bases) {
        for (int m : {1, 2}) {
            if (run.options.quick && name == "surface(2)" && m == 2) continue;
            run.run([&] {
                auto r = check_proj_bundle(name + " x cp" + std::to_string(m) + ", trivial", x, LocalSystem::trivial(x), m, rng);
                r.seed = run.options.seed;
                return r;
            });
            if (loop_basis(x).empty()) continue;
            run.run([&] {
                auto r = check_proj_bundle(name + " x cp" + std::to_string(m) + ", generic", x, default_generic_system(x), m, rng);
                r.seed = run.options.seed;
                return r;
            });
        }
    }
}

void suite_gauge(SuiteRunner& run) {
    std::mt19937_64 rng(run.options.seed);
    auto c3 = build_model("circle", {3}).complex;
    auto s2 = build_model("surface", {2}).complex;
    auto t2 = build_model("torus_2d").complex;
    auto sp = build_model("sphere", {2}).complex;
    auto cp = build_model("cp2").complex;
    std::vector<std::tuple<std::string, ComplexPtr, LocalSystem>> cases = {
        {"circle(3), monodromy 2", c3, generic_system(c3, {Rational(2)})},
        {"surface(2), generic", s2, default_generic_system(s2)},
        {"torus_2d, generic", t2, generic_system(t2, {Rational(2), Rational(3)})},
        {"sphere(2), trivial", sp, LocalSystem::trivial(sp)},
        {"cp2, trivial", cp, LocalSystem::trivial(cp)},
    };
    for (const auto& [name, c, s] : cases) {
        run.run([&] {
            auto r = check_gauge_invariance(name, c, s, 10, rng);
            r.seed = run.options.seed;
            return r;
        });
    }
}

void suite_les(SuiteRunner& run) {
    auto disc = build_model("simplex", {2}).complex;
    Subcomplex rim = subcomplex(disc, std::vector<Simplex>{{0, 1}, {1, 2}, {0, 2}}, SelectMode::CloseFaces);
    auto c3 = build_model("circle", {3}).complex;
    Subcomplex pt = subcomplex(c3, std::vector<Simplex>{{0}});
    Product torus = product(build_model("circle", {3}).complex, build_model("circle", {3}).complex);
    Subcomplex factor = product_slice(torus, 1, 0);
    auto s2 = build_model("surface", {2}).complex;
    Subcomplex wedge = wedge_of_circles(s2, 2);
    auto cp = build_model("cp2").complex;
    Subcomplex line = cp1_in_cp2(cp);

    std::vector<std::tuple<std::string, ComplexPtr, Subcomplex>> pairs = {
        {"(simplex(2), boundary)", disc, rim},
        {"(circle(3), pt)", c3, pt},
        {"(torus_2d, circle factor)", torus.complex, factor},
        {"(surface(2), wedge of circles)", s2, wedge},
        {"(cp2, cp1)", cp, line},
        {"(circle(3), circle(3))", c3, subcomplex(c3, [](const Simplex&) { return true; })},
    };
    for (const auto& [name, x, z] : pairs) {
        run.run([&] { return check_les_and_ladder(name + ", trivial", x, z, LocalSystem::trivial(x)); });
        if (loop_basis(x).empty()) continue;  // simply connected: generic = trivial
        run.run([&] { return check_les_and_ladder(name + ", generic", x, z, default_generic_system(x)); });
    }
}

void suite_ladder(SuiteRunner& run) {
    std::mt19937_64 rng(run.options.seed);
    for (int t = 0; t < 100; ++t) {
        run.run([&] {
            auto r = check_ladder("random ladder #" + std::to_string(t), random_valid_ladder(rng), false);
            r.seed = run.options.seed;
            return r;
        });
    }
    const std::vector<std::pair<LadderDefect, std::string>> defects = {
        {LadderDefect::I1NotEpi, "i1 not epi"}, {LadderDefect::I4NotIso, "i4 not iso"}, {LadderDefect::I2NotMono, "i2 not mono"}};
    for (const auto& [defect, name] : defects) {
        for (int t = 0; t < 5; ++t) {
            run.run([&] {
                auto r = check_ladder("violating ladder (" + name + ") #" + std::to_string(t), random_violating_ladder(rng, defect), true);
                r.seed = run.options.seed;
                return r;
            });
        }
    }
}

void suite_injectivity(SuiteRunner& run) {
    run.run([] {
        auto cp = build_model("cp2").complex;
        return check_pullback_injectivity("identity on cp2", SimplicialMap::identity(cp), LocalSystem::trivial(cp));
    });
    run.run([] {
        auto f = circle_cover(3, 2);
        return check_pullback_injectivity("circle(6) -> circle(3) double cover, trivial", f, LocalSystem::trivial(f.target));
    });
    run.run([] {
        auto f = circle_cover(3, 2);
        return check_pullback_injectivity("circle(6) -> circle(3) double cover, monodromy 2", f, generic_system(f.target, {Rational(2)}));
    });
}

} // namespace

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& options) {
    if (!is_suite(name)) throw Error(ErrorCode::BadParams, "unknown suite '" + name + "'");
    std::vector<CheckReport> out;
    SuiteRunner runner{options, out};
    auto want = [&](const char* s) { return name == "all" || name == s; };
    if (want("main-theorem")) suite_main(runner);
    if (want("proj-bundle")) suite_proj(runner);
    if (want("gauge")) suite_gauge(runner);
    if (want("les")) suite_les(runner);
    if (want("coker-ladder")) suite_ladder(runner);
    if (want("injectivity")) suite_injectivity(runner);
    return out;
}

} // namespace novikov
