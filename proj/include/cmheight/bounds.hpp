#pragma once

#include "cmheight/heights.hpp"

#include <optional>

#include "json.hpp"

namespace cmh {

constexpr mpfr_prec_t kBoundPrecision = 256;

/// C₁ = (log 2 + 22/3 + log max(1, |j|)) / 6.
RealInterval compute_C1(const RealInterval& j_abs, mpfr_prec_t prec = kBoundPrecision);
RealInterval j_abs_interval(const Rational& j, mpfr_prec_t prec = kBoundPrecision);

/// (1/(2(a² + b²)))·((f·log p)/(ρd) − C₁); negative values are returned as is.
RealInterval lemma_bound(const Integer& a, const Integer& b, const Integer& p, long f, const Rational& rho,
                         long d, const RealInterval& C1);

/// (1/(4q⁴))·((1/d)·log q − C₁).
RealInterval intermediate_bound(const Integer& q, long d, const RealInterval& C1);

struct PrimeWindow {
    RealInterval lo, hi;  // 2e^{dC₁}, 4e^{dC₁}
    Integer p;            // smallest prime with lo ≤ p < hi
    /// p proven prime (certify_prime, up to 100 bits); otherwise a BPSW
    /// probable prime.
    bool certified = false;
};

/// Throws PrecisionExhausted if the window edges cannot be resolved; C₁
/// needs about d·C₁/log 2 + 64 bits (see window_precision).
PrimeWindow prime_window(long d, const RealInterval& C1);
mpfr_prec_t window_precision(long d, const RealInterval& j_abs);

/// 2^{−36d²−16d−8}·max(1, |j|)^{−4d²}.
RealInterval main_bound(long d, const RealInterval& j_abs);

struct ChainLink {
    std::string link;
    RealInterval lhs;
    std::string relation;  // "<=", "<" or ">="
    RealInterval rhs;
    /// The relation holds for the enclosures.
    bool pass = false;
    /// Reported but not part of the pass/fail verdict.
    bool informational = false;
};

struct ChainReport {
    long d = 1;
    RealInterval j_abs;
    RealInterval C1;
    Integer p;
    std::vector<ChainLink> links;
    bool all_pass() const;
};

/// Certified evaluation of each step from the intermediate bound at the
/// window prime down to the main bound.
ChainReport inequality_chain_check(long d, const RealInterval& j_abs);

struct QCheckReport {
    CurvePoint Q;
    RealInterval h_P{}, h_Q{}, rhs{};  // rhs = 2(4 + (g₂ − g₁)²)·ĥ(P)
    bool inequality_holds = false;
    bool Q_torsion = false;
    bool P_torsion = false;
    /// Q torsion while P is not: the non-torsion argument would be violated.
    bool violation = false;
    /// ĥ(σ₁P − σ₂P) + ĥ(σ₁P + σ₂P) − 4ĥ(P)
    RealInterval parallelogram_residual{};
    bool parallelogram_holds = false;
};

/// Q = σ₂P − σ₁P − (g₂ − g₁)P and the height inequalities around it.
QCheckReport construct_Q_check(const CurvePoint& P, const CurvePoint& s1P, const CurvePoint& s2P,
                               const Integer& g1, const Integer& g2, double tol = 1e-10);

enum class Verdict { ConsistentNontorsion, BelowBoundTorsionPredicted, TorsionConfirmed, Inconsistent };
std::string to_string(Verdict v);

struct BoundCertificate {
    std::string curve;
    std::string field;
    std::string point;
    long d = 1;
    RealInterval j_abs;
    RealInterval C1;
    PrimeWindow window;
    Integer q;
    RealInterval intermediate;
    RealInterval main;
    std::optional<HeightResult> hhat;
    Verdict verdict = Verdict::Inconsistent;
    ChainReport chain;
};

/// Base field ℚ (d = 1). Throws "not a rational CM j-invariant" for non-CM
/// curves and PrecisionExhausted if ĥ cannot be separated from the bound.
BoundCertificate certify_point(const CurvePoint& P, double tol = 1e-10);

nlohmann::json to_json(const RealInterval& r);
nlohmann::json to_json(const ChainReport& c);
nlohmann::json to_json(const BoundCertificate& c);

}  // namespace cmh
