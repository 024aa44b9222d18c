#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "novikov/complex.hpp"
#include "novikov/local_system.hpp"
#include "novikov/pairs.hpp"

namespace novikov {

/**
 * Outcome of one verification. `pass` holds iff every per-degree equality in
 * `expected` vs `computed` (and in every auxiliary row) holds exactly.
 */
struct CheckReport {
    std::string check;
    std::string instance;
    std::vector<std::size_t> expected;
    std::vector<std::size_t> computed;
    std::vector<int> failing_degrees;
    bool pass = true;
    std::optional<std::uint64_t> seed;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();  // per-degree rows, witnesses
    double wall_time_ms = 0;

    /// Compares expected and computed and records the failing degrees.
    void settle();
};

nlohmann::ordered_json to_json(const CheckReport& r, bool with_timing = true);

struct MainTheoremInstance {
    std::string label;
    ComplexPtr x;
    LocalSystem x_system;
    std::optional<Subcomplex> z;  // nullopt: nothing blown up
    ComplexPtr xtilde;
    LocalSystem xtilde_system;
    int r = 2;
    // optional model of the exceptional divisor E = Z x CP^{r-1}
    ComplexPtr e;
    LocalSystem e_system;
};

/// dim H^k(X~) = dim H^k(X) + sum_{j=1}^{r-1} dim H^{k-2j}(Z) for every k.
/// Throws Error{IncoherentInstance} for inconsistent inputs.
CheckReport check_main_theorem(const MainTheoremInstance& inst);

/// Product case of the projective bundle formula plus the Pi_j round trip on
/// `samples` random cocycles.
CheckReport check_proj_bundle(const std::string& label, const ComplexPtr& x, const LocalSystem& s, int m, std::mt19937_64& rng,
                              int samples = 10);

/// Full column rank of f^* in every degree.
CheckReport check_pullback_injectivity(const std::string& label, const SimplicialMap& f, const LocalSystem& s);

/// Betti numbers unchanged under `trials` random positive gauges.
CheckReport check_gauge_invariance(const std::string& label, const ComplexPtr& c, const LocalSystem& s, int trials,
                                   std::mt19937_64& rng);

/// Exactness at every node of the pair sequence and the cokernel bookkeeping
/// dim coker(i*_k) = rank(d_k), dim ker(i*_k) = rank(j_k).
CheckReport check_les_and_ladder(const std::string& label, const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s);

/// Wraps check_coker_ladder; `expect_violation` turns a rejected ladder into a pass.
CheckReport check_ladder(const std::string& label, const LadderInstance& l, bool expect_violation);

// ---------------------------------------------------------------------------
// Suites

struct SuiteOptions {
    std::uint64_t seed = 7;
    bool quick = false;   // skip the largest instances
    bool stop_on_failure = true;
};

const std::vector<std::string>& suite_names();  // main-theorem, proj-bundle, gauge, les, coker-ladder, injectivity
bool is_suite(const std::string& name);          // also accepts "all"
/// Runs a suite (or "all") and returns one report per instance. Stops after
/// the first failure when options.stop_on_failure is set.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& options);

// Instance builders shared with tests
MainTheoremInstance main_instance_cp2_point();
MainTheoremInstance main_instance_surface_cp2();
MainTheoremInstance main_instance_empty(const ComplexPtr& x, const LocalSystem& s);

/// Loop weights used as the "generic" system: 2 on the first loop, 1 on the rest.
LocalSystem default_generic_system(const ComplexPtr& c);

} // namespace novikov
