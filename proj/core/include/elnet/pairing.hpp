// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/curves.hpp>
#include <elnet/ellnet.hpp>
#include <optional>

namespace elnet
{
struct PairingOptions
{
    bool modified = true;
    bool reduce = true;  ///< apply the final exponentiation
    StepFn executor;     ///< defaults to the sequential step
    std::function<void(const TraceRecord&)> trace;
};

/// Cleared-denominator pieces of the BN line evaluations.
struct BNLineIntermediates
{
    Fe W, S, T, Shat, That, Z, U, V;
    Fe L1, L2;
};

/// [x]Q~ = (A / W^2, B / W^3) and the two KSS16 lines.
struct KSSLineIntermediates
{
    Fe W, A, B;
    Fe l1, l2;
};

struct PairingOutput
{
    Family family;
    Fe raw;                    ///< before the final exponentiation
    std::optional<Fe> reduced;
    LoopPlan loop;
    std::size_t steps = 0, additions = 0, subtractions = 0;
    std::optional<BNLineIntermediates> bn;
    std::optional<KSSLineIntermediates> kss;
};

/// Frobenius twist constants theta^(j (p^i - 1)) in F_{p^e}.
struct TwistConstants
{
    Fe c2p, c3p;    ///< theta^(2(p-1)), theta^(3(p-1))
    Fe c2p2, c3p2;  ///< theta^(2(p^2-1)), theta^(3(p^2-1))
};
TwistConstants twist_constants(const CurveInstance& inst);

/// Optimal ate pairing of Q~ (on the twist) and P (on E(F_p)) through elliptic nets.
PairingOutput optimal_ate(const CurveInstance& inst, const Point& Qt, const Point& P, const PairingOptions& opt = {});

/// f^((p^k - 1) / r): easy part through Frobenius, hard part as a base-p multi-exponentiation.
Fe final_exp(const CurveInstance& inst, const Fe& f);

/// Line through A and B (tangent when equal, vertical when opposite) evaluated at S.
Fe line_value(const Curve& E, const Point& A, const Point& B, const Point& S);
/// Textbook Miller function f_{n,Q}(S) with vertical lines; n may be negative.
Fe miller(const Curve& E, const Int& n, const Point& Q, const Point& S);

/// Unreduced optimal ate through Miller functions on E over F_{p^k}.
Fe miller_optimal_ate(const CurveInstance& inst, const Point& Qt, const Point& P);

/// Reduced Tate pairing through W_{P,Q}(r,1); Q is a point of E over F_{p^k}.
PairingOutput tate_net(const CurveInstance& inst, const Point& P, const Point& Q, bool reduce = true);
/// Reduced Tate pairing f_{r,P}(Q)^((p^k - 1)/r).
Fe tate_miller(const CurveInstance& inst, const Point& P, const Point& Q);

/// E with coefficients viewed at the top level, used for points over F_{p^k}.
Curve top_curve(const CurveInstance& inst);
}  // namespace elnet
