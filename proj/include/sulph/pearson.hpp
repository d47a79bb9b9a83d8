#pragma once

#include <optional>

namespace sulph {

/// Raw coefficients of dΨ = α(γ − Ψ)dt + σ√(Ψ(η − Ψ)) dW, before validation.
struct PearsonCoefficients {
    double alpha{7.0};
    double gamma{1.0};
    double sigma{1.0};
    double eta{1.5};
};

/// Beta exponents ν₁ = 2αγ/(σ²η), ν₂ = 2α(η−γ)/(σ²η). Requires σ > 0.
struct BetaExponents {
    double nu1;
    double nu2;
    double nu() const noexcept { return nu1 < nu2 ? nu1 : nu2; }
};

BetaExponents beta_exponents(const PearsonCoefficients& c);

/// Validated Pearson boundary diffusion.
///
/// σ = 0 is the deterministic mode: the exponents are reported as +inf and the
/// ν > 1 check is skipped. For σ > 0 construction succeeds only when
/// min(ν₁, ν₂) > 1, which makes both 0 and η entrance boundaries.
class PearsonParams {
public:
    /// Throws Error{NonPositiveCoefficient | GammaNotBelowEta | NuConditionViolated}.
    static PearsonParams validate(const PearsonCoefficients& raw);

    double alpha() const noexcept { return c_.alpha; }
    double gamma() const noexcept { return c_.gamma; }
    double sigma() const noexcept { return c_.sigma; }
    double eta() const noexcept { return c_.eta; }
    double nu1() const noexcept { return nu_.nu1; }
    double nu2() const noexcept { return nu_.nu2; }
    double nu() const noexcept { return nu_.nu(); }
    bool deterministic() const noexcept { return c_.sigma == 0.0; }
    const PearsonCoefficients& coefficients() const noexcept { return c_; }

private:
    PearsonParams(PearsonCoefficients c, BetaExponents nu) : c_(c), nu_(nu) {}

    PearsonCoefficients c_;
    BetaExponents nu_;
};

enum class BoundaryKind { Entrance, NotEntrance };

struct BoundaryClassification {
    BoundaryKind left;
    BoundaryKind right;
    double nu;
};

/// Feller classification of 0 and η. Accepts non-admissible coefficients so
/// that violations can be inspected; returns nullopt in the deterministic mode.
std::optional<BoundaryClassification> classify_boundaries(const PearsonCoefficients& c);
std::optional<BoundaryClassification> classify_boundaries(const PearsonParams& p);

// Scale and speed densities with anchor x0 (default η/2). Both are evaluated in
// log space; exponents reach ~150 for small σ. Throw DomainViolation outside
// (0, η) and in the deterministic mode.
double scale_density(const PearsonParams& p, double x);
double scale_density(const PearsonParams& p, double x, double x0);
double speed_density(const PearsonParams& p, double x);
double speed_density(const PearsonParams& p, double x, double x0);

/// Beta(ν₁, ν₂) density rescaled to [0, η].
double invariant_density(const PearsonParams& p, double x);

/// CDF of the rescaled Beta(ν₁, ν₂) law; clamps to {0, 1} outside [0, η].
double invariant_cdf(const PearsonParams& p, double x);

}  // namespace sulph
