#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckim/curve.hpp"
#include "ckim/errors.hpp"

namespace ckim {

/// Externally supplied arithmetic data. Every optional field has a
/// conservative default; whichever defaults fire are recorded so reports
/// can mark dependent quantities as conditional.
struct ArithmeticInputs {
  long long r = 0;                     // Mordell-Weil rank of Jac(X)
  std::optional<long long> r_p;        // p^infinity-Selmer rank; defaults to r
  std::optional<long long> rho;        // Picard number of Jac(X)
  std::optional<long long> rho_f;      // rho + rank NS(Jac over Qbar)^{sigma=-1}
  std::optional<long long> rho_geo;    // rank NS(Jac over Qbar)
  std::optional<long long> h_bk;       // conjecturally zero Selmer dimension
};

struct ResolvedArithmetic {
  long long r = 0;
  long long r_p = 0;
  long long rho = 0;
  long long rho_f = 0;
  long long rho_geo = 0;
  long long h_bk = 0;
  bool assumed_sha = false;        // r_p defaulted to r
  bool assumed_bloch_kato = false; // h_bk defaulted to 0
  std::vector<std::string> warnings;
};

inline ResolvedArithmetic resolve_arithmetic(const ArithmeticInputs& in, long long g) {
  ResolvedArithmetic out;
  out.r = in.r;
  out.assumed_sha = !in.r_p.has_value();
  out.r_p = in.r_p.value_or(in.r);
  out.assumed_bloch_kato = !in.h_bk.has_value();
  out.h_bk = in.h_bk.value_or(0);
  if (in.rho) {
    out.rho = *in.rho;
  } else {
    out.rho = g >= 1 ? 1 : 0;
    if (g >= 1) out.warnings.push_back("rho not supplied; using the minimal value rho = 1");
  }
  if (g >= 1 && !in.rho_f)
    out.warnings.push_back("rho_f not supplied; using rho_f = rho (no antiholomorphic classes)");
  out.rho_f = in.rho_f.value_or(out.rho);
  if (g >= 1 && !in.rho_geo)
    out.warnings.push_back("rho_geo not supplied; using rho_geo = rho_f");
  out.rho_geo = in.rho_geo.value_or(out.rho_f);
  if (out.assumed_sha)
    out.warnings.push_back("r_p not supplied; using r_p = r (trivial p-divisible Sha)");
  if (out.assumed_bloch_kato)
    out.warnings.push_back("h_BK not supplied; using h_BK = 0 (Bloch-Kato vanishing)");

  if (out.r < 0 || out.r_p < 0 || out.rho < 0 || out.rho_f < 0 || out.rho_geo < 0 || out.h_bk < 0)
    throw InputInconsistency("arithmetic inputs must be nonnegative");
  if (out.r_p < out.r)
    throw InputInconsistency("r_p >= r is required (Selmer rank dominates Mordell-Weil rank)");
  if (g >= 1 && out.rho < 1) throw InputInconsistency("rho >= 1 is required when g >= 1");
  if (g == 0 && (out.rho != 0 || out.rho_f != 0 || out.rho_geo != 0 || out.r != 0 || out.r_p != 0))
    throw InputInconsistency("g = 0 forces r = r_p = rho = rho_f = rho_geo = 0");
  if (!(out.rho <= out.rho_f && out.rho_f <= out.rho_geo))
    throw InputInconsistency("need rho <= rho_f <= rho_geo");
  return out;
}

enum class QuotientKind { Abelianized, AbelianByArtinTate, FullWeightTwo };

inline const char* quotient_kind_name(QuotientKind k) {
  switch (k) {
    case QuotientKind::Abelianized: return "abelianized";
    case QuotientKind::AbelianByArtinTate: return "abelian_by_artin_tate";
    case QuotientKind::FullWeightTwo: return "full_weight_two";
  }
  return "?";
}

/// Bloch-Kato Selmer dimensions of one weight-graded piece.
struct GradedPieceDims {
  int weight = -1;            // -1 or -2
  long long dim_global = 0;   // dim H^1_f(G_Q, gr)
  long long dim_local = 0;    // dim H^1_f(G_p, gr)
  std::string label;
};

struct QuotientDescriptor {
  QuotientKind kind = QuotientKind::Abelianized;
  std::vector<GradedPieceDims> pieces;  // exactly one piece per weight
};

/// Weight -1 piece: the Tate module of the Jacobian.
/// dim H^1_f(G_Q, V_p Jac) = r_p and dim H^1_f(G_p, V_p Jac) = g.
inline GradedPieceDims tate_module_dims(long long g, long long r_p) {
  return {-1, r_p, g, "V_p Jac"};
}

/// Weight -2 summand from the cuspidal inertia:
/// global n1 + n2 - #|D|, local n - 1.
inline GradedPieceDims cuspidal_inertia_dims(const GeometricInvariants& inv) {
  long long global = inv.n1 + inv.n2 - inv.d_closed;
  if (global < 0) throw InputInconsistency("cusp data gives negative inertia Selmer dimension");
  return {-2, global, inv.n - 1, "Qp(1)^D / Qp(1)"};
}

/// Selmer dimensions of an Artin-Tate representation W:
/// local dim W, global -h0(W^dual(1)) + dim W - dim W^{sigma=1}.
inline std::pair<long long, long long> artin_tate_dims(long long dim_w, long long h0_dual,
                                                       long long dim_sigma_fixed) {
  long long global = -h0_dual + dim_w - dim_sigma_fixed;
  if (global < 0)
    throw InputInconsistency("Artin-Tate Selmer dimension is negative; inputs are inconsistent");
  return {global, dim_w};
}

/// Selmer dimensions of the wedge square of the Tate module:
/// global g(g+1)/2 - rho + h_BK, local g(3g-1)/2.
inline std::pair<long long, long long> wedge_square_dims(long long g, long long rho,
                                                         long long h_bk) {
  if (g >= 1 && rho < 1) throw InputInconsistency("rho >= 1 is required when g >= 1");
  long long global = g * (g + 1) / 2 - rho + h_bk;
  if (global < 0)
    throw InputInconsistency("wedge-square Selmer dimension is negative; check rho and h_BK");
  return {global, g * (3 * g - 1) / 2};
}

/// Poitou-Tate ladder: h0(W) + h1f(W^dual(1)) - h0(W^dual(1)) + h1f_local(W)
/// - dim W^{sigma=1}.
inline long long poitou_tate_dim(long long h0_w, long long h1f_dual, long long h0_dual,
                                 long long h1f_local, long long dim_sigma_fixed) {
  return h0_w + h1f_dual - h0_dual + h1f_local - dim_sigma_fixed;
}

/// Assembles the weight-graded Selmer dimension table of the requested
/// fundamental-group quotient. The weight -1 piece is always the Tate
/// module; the weight -2 piece depends on the kind:
///   Abelianized          cuspidal inertia only
///   AbelianByArtinTate   inertia + Artin-Tate piece of dimension rho_geo
///   FullWeightTwo        inertia + wedge square of the Tate module
inline QuotientDescriptor build_quotient(QuotientKind kind, const GeometricInvariants& inv,
                                         const ResolvedArithmetic& arith) {
  QuotientDescriptor out;
  out.kind = kind;
  out.pieces.push_back(tate_module_dims(inv.g, arith.r_p));
  GradedPieceDims w2 = cuspidal_inertia_dims(inv);
  switch (kind) {
    case QuotientKind::Abelianized:
      break;
    case QuotientKind::AbelianByArtinTate: {
      // W = (Qp (x) NS(Jac over Qbar))^dual(1): dim W = rho_geo,
      // h0 of the dual twist = rho, dim W^{sigma=1} = rho_f - rho
      auto [glob, loc] = artin_tate_dims(arith.rho_geo, arith.rho, arith.rho_f - arith.rho);
      w2.dim_global += glob;
      w2.dim_local += loc;
      w2.label = "NS^dual(1) + " + w2.label;
      break;
    }
    case QuotientKind::FullWeightTwo: {
      auto [glob, loc] = wedge_square_dims(inv.g, arith.rho, arith.h_bk);
      w2.dim_global += glob;
      w2.dim_local += loc;
      w2.label = "wedge^2 V_p Jac + " + w2.label;
      break;
    }
  }
  out.pieces.push_back(w2);
  return out;
}

}  // namespace ckim
