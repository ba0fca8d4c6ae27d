#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wallach/core.hpp"

namespace wallach {

/// Right-hand side of the reduced flow for a1 = a2 = a3 = a:
///   f_k = x_k/x_i + x_k/x_j + 2a (x_i/x_j + x_j/x_i - 2 x_k^2/(x_i x_j)) - 2.
/// Homogeneous of degree 0; x1 x2 x3 is a first integral.
Vec3 vector_field_equal_a(const Metric& m, const SpaceParams& p);

/// Diagonal normalized Ricci flow dx_k/dt = -2 x_k r_k + 2 x_k S / n with
/// n = d1 + d2 + d3. Uses the per-index a_k. Throws MissingDimensions.
Vec3 vector_field_general(const Metric& m, const SpaceParams& p);

enum class Method { RK4Fixed, RK45Adaptive };

struct IntegratorOptions {
    Method method = Method::RK45Adaptive;
    double dt = 1e-2;         // RK4Fixed step; initial step guess for RK45
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double t_end = 10.0;
    bool renormalize_each_step = false;
    int store_every = 1;
    bool detect_events = false;

    void validate() const;
};

enum class CrossingKind { GammaZero, LambdaZero };

struct CrossingEvent {
    double t;
    CrossingKind kind;
    int k;
    Metric m;
};

std::string_view to_string(CrossingKind kind);

struct TrajectorySample {
    double t;
    Metric m;
};

enum class Termination { Completed, BlowUp, StepFailure };

std::string_view to_string(Termination t);

struct Trajectory {
    std::vector<TrajectorySample> samples;
    /// max |V - V0| / V0 over accepted steps, measured before any projection.
    double max_volume_drift = 0.0;
    std::vector<CrossingEvent> events;
    Termination termination = Termination::Completed;
    std::string diagnostic;
    /// Options used to produce the samples; event refinement replays segments with them.
    IntegratorOptions options;

    bool truncated() const noexcept { return termination != Termination::Completed; }
};

/// Coordinates must stay inside this band; leaving it ends the run with BlowUp.
inline constexpr double kBlowUpLower = 1e-12;
inline constexpr double kBlowUpUpper = 1e12;
/// Adaptive steps below this size end the run with StepFailure.
inline constexpr double kMinStep = 1e-14;

/// Integrates the equal-a flow from m0. Never throws on BlowUp or
/// StepFailure: the samples up to the last in-range state are kept and the
/// termination field records the cause.
Trajectory integrate(const Metric& m0, const SpaceParams& p, const IntegratorOptions& opts);

/// Sign changes of gamma_k / lambda_k between consecutive samples, refined by
/// bisection on the replayed segment. Sorted by time.
std::vector<CrossingEvent> detect_crossings(const Trajectory& traj, const SpaceParams& p,
                                            const Tolerances& tol = {});

}  // namespace wallach
