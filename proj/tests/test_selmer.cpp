#include "ckim/selmer.hpp"
#include "doctest.h"

using namespace ckim;

namespace {

ResolvedArithmetic resolved(long long g, long long r, long long r_p, long long rho,
                            long long rho_f, long long rho_geo, long long h_bk) {
  ArithmeticInputs in;
  in.r = r;
  in.r_p = r_p;
  in.rho = rho;
  in.rho_f = rho_f;
  in.rho_geo = rho_geo;
  in.h_bk = h_bk;
  return resolve_arithmetic(in, g);
}

GeometricInvariants tpl_invariants() { return {0, 3, 3, 0, 3, 2}; }
GeometricInvariants superelliptic_invariants() { return {2, 1, 1, 0, 1, 0}; }
GeometricInvariants hyp_even_negative_lc() { return {2, 2, 0, 1, 1, 1}; }

}  // namespace

TEST_CASE("resolve_arithmetic applies the documented defaults") {
  ArithmeticInputs in;
  in.r = 2;
  in.rho = 1;
  ResolvedArithmetic out = resolve_arithmetic(in, 2);
  CHECK(out.r_p == 2);
  CHECK(out.assumed_sha);
  CHECK(out.h_bk == 0);
  CHECK(out.assumed_bloch_kato);
  CHECK(out.rho_f == 1);
  CHECK(out.rho_geo == 1);

  ArithmeticInputs explicit_in;
  explicit_in.r = 1;
  explicit_in.r_p = 3;
  explicit_in.rho = 2;
  explicit_in.rho_f = 2;
  explicit_in.rho_geo = 4;
  explicit_in.h_bk = 1;
  ResolvedArithmetic out2 = resolve_arithmetic(explicit_in, 3);
  CHECK_FALSE(out2.assumed_sha);
  CHECK_FALSE(out2.assumed_bloch_kato);
  CHECK(out2.r_p == 3);
  CHECK(out2.rho_geo == 4);
}

TEST_CASE("resolve_arithmetic rejects inconsistent data") {
  ArithmeticInputs in;
  in.r = 3;
  in.r_p = 1;  // r_p < r
  in.rho = 1;
  CHECK_THROWS_AS(resolve_arithmetic(in, 2), InputInconsistency);

  ArithmeticInputs rho0;
  rho0.r = 0;
  rho0.rho = 0;
  CHECK_THROWS_AS(resolve_arithmetic(rho0, 1), InputInconsistency);  // g >= 1 needs rho >= 1

  ArithmeticInputs order;
  order.r = 0;
  order.rho = 3;
  order.rho_f = 2;  // rho_f < rho
  CHECK_THROWS_AS(resolve_arithmetic(order, 2), InputInconsistency);

  ArithmeticInputs genus0;
  genus0.r = 1;  // trivial Jacobian cannot have rank
  CHECK_THROWS_AS(resolve_arithmetic(genus0, 0), InputInconsistency);
}

TEST_CASE("tate_module_dims on the named inputs") {
  CHECK(tate_module_dims(0, 0).dim_global == 0);
  CHECK(tate_module_dims(0, 0).dim_local == 0);
  CHECK(tate_module_dims(2, 2).dim_global == 2);
  CHECK(tate_module_dims(2, 2).dim_local == 2);
  CHECK(tate_module_dims(3, 1).dim_global == 1);
  CHECK(tate_module_dims(3, 1).dim_local == 3);
  CHECK(tate_module_dims(3, 1).weight == -1);
}

TEST_CASE("cuspidal_inertia_dims on the named inputs") {
  GradedPieceDims tpl = cuspidal_inertia_dims(tpl_invariants());
  CHECK(tpl.dim_global == 0);  // 3 + 0 - 3
  CHECK(tpl.dim_local == 2);   // 3 - 1
  GradedPieceDims se = cuspidal_inertia_dims(superelliptic_invariants());
  CHECK(se.dim_global == 0);
  CHECK(se.dim_local == 0);
  GradedPieceDims he = cuspidal_inertia_dims(hyp_even_negative_lc());
  CHECK(he.dim_global == 0);  // 0 + 1 - 1
  CHECK(he.dim_local == 1);   // 2 - 1
  CHECK(he.weight == -2);
}

TEST_CASE("artin_tate_dims on the named inputs") {
  CHECK(artin_tate_dims(0, 0, 0) == std::pair<long long, long long>{0, 0});
  CHECK(artin_tate_dims(1, 1, 0) == std::pair<long long, long long>{0, 1});
  CHECK(artin_tate_dims(3, 1, 2) == std::pair<long long, long long>{0, 3});
  CHECK(artin_tate_dims(5, 1, 1) == std::pair<long long, long long>{3, 5});
  CHECK_THROWS_AS(artin_tate_dims(1, 2, 0), InputInconsistency);
}

TEST_CASE("wedge_square_dims on the named inputs") {
  CHECK(wedge_square_dims(0, 0, 0) == std::pair<long long, long long>{0, 0});
  CHECK(wedge_square_dims(2, 1, 0) == std::pair<long long, long long>{2, 5});
  CHECK(wedge_square_dims(1, 1, 0) == std::pair<long long, long long>{0, 1});
  CHECK_THROWS_AS(wedge_square_dims(1, 2, 0), InputInconsistency);  // 1 - 2 < 0
  CHECK_THROWS_AS(wedge_square_dims(2, 0, 0), InputInconsistency);  // rho >= 1 when g >= 1
}

TEST_CASE("poitou_tate_dim on the named inputs") {
  CHECK(poitou_tate_dim(0, 0, 0, 0, 0) == 0);
  // wedge-square instance, g = 2, rho = 1, h_BK = 0, dim W^{sigma=1} = g(g-1)
  CHECK(poitou_tate_dim(0, 0, 1, 5, 2) == 2);
}

TEST_CASE("poitou_tate_dim reproduces the closed forms") {
  // wedge square: global = g(g+1)/2 - rho + h_BK with h1f_local = g(3g-1)/2,
  // dim W^{sigma=1} = g(g-1)
  for (long long g = 0; g <= 6; ++g) {
    for (long long rho = (g >= 1 ? 1 : 0); rho <= g * g; ++rho) {
      for (long long h_bk = 0; h_bk <= 2; ++h_bk) {
        long long expected = g * (g + 1) / 2 - rho + h_bk;
        if (expected < 0) continue;
        CHECK(poitou_tate_dim(0, h_bk, rho, g * (3 * g - 1) / 2, g * (g - 1)) == expected);
      }
    }
  }
  // Artin-Tate: h0_W = h1f_dual = 0 reproduces artin_tate_dims
  for (long long dim_w = 0; dim_w <= 5; ++dim_w)
    for (long long h0 = 0; h0 <= dim_w; ++h0)
      for (long long fixed = 0; fixed + h0 <= dim_w; ++fixed)
        CHECK(poitou_tate_dim(0, 0, h0, dim_w, fixed) == artin_tate_dims(dim_w, h0, fixed).first);
}

TEST_CASE("build_quotient assembles the three descriptors") {
  // Abelianized over the thrice-punctured line, all ranks zero
  ResolvedArithmetic zero = resolved(0, 0, 0, 0, 0, 0, 0);
  QuotientDescriptor ab = build_quotient(QuotientKind::Abelianized, tpl_invariants(), zero);
  REQUIRE(ab.pieces.size() == 2);
  CHECK(ab.pieces[0].weight == -1);
  CHECK(ab.pieces[0].dim_global == 0);
  CHECK(ab.pieces[0].dim_local == 0);
  CHECK(ab.pieces[1].weight == -2);
  CHECK(ab.pieces[1].dim_global == 0);
  CHECK(ab.pieces[1].dim_local == 2);

  // AbelianByArtinTate over even hyperelliptic lc < 0: g=2, r_p=2, rho = rho_f = rho_geo = 1
  ResolvedArithmetic he = resolved(2, 2, 2, 1, 1, 1, 0);
  QuotientDescriptor abat =
      build_quotient(QuotientKind::AbelianByArtinTate, hyp_even_negative_lc(), he);
  CHECK(abat.pieces[0].dim_global == 2);
  CHECK(abat.pieces[0].dim_local == 2);
  CHECK(abat.pieces[1].dim_global == 0);  // (0+1-1) + (-1 + 1 - 0)
  CHECK(abat.pieces[1].dim_local == 2);   // (2-1) + 1

  // FullWeightTwo over the thrice-punctured line
  QuotientDescriptor w2 = build_quotient(QuotientKind::FullWeightTwo, tpl_invariants(), zero);
  CHECK(w2.pieces[0].dim_global == 0);
  CHECK(w2.pieces[0].dim_local == 0);
  CHECK(w2.pieces[1].dim_global == 0);
  CHECK(w2.pieces[1].dim_local == 2);
}

TEST_CASE("abelian-by-Artin-Tate weight -2 global dimension identity") {
  // equals (n1 + n2 - #|D|) + (rho_geo - rho_f) for all corpus inputs
  std::vector<GeometricInvariants> cusp_data{
      tpl_invariants(), superelliptic_invariants(), hyp_even_negative_lc(), {1, 2, 2, 0, 2, 1},
      {3, 5, 1, 2, 3, 4}};
  for (const auto& inv : cusp_data) {
    for (long long rho = 1; rho <= 3; ++rho)
      for (long long rho_f = rho; rho_f <= 4; ++rho_f)
        for (long long rho_geo = rho_f; rho_geo <= 5; ++rho_geo) {
          if (inv.g == 0) continue;
          ResolvedArithmetic arith = resolved(inv.g, 1, 1, rho, rho_f, rho_geo, 0);
          QuotientDescriptor desc = build_quotient(QuotientKind::AbelianByArtinTate, inv, arith);
          CHECK(desc.pieces[1].dim_global ==
                (inv.n1 + inv.n2 - inv.d_closed) + (rho_geo - rho_f));
          CHECK(desc.pieces[1].dim_local == (inv.n - 1) + rho_geo);
        }
  }
}

TEST_CASE("full weight-two local dimension exceeds the abelianized one by g(3g-1)/2") {
  std::vector<GeometricInvariants> cusp_data{tpl_invariants(), superelliptic_invariants(),
                                             hyp_even_negative_lc(), {3, 5, 1, 2, 3, 4}};
  for (const auto& inv : cusp_data) {
    ResolvedArithmetic arith =
        resolved(inv.g, 0, 0, inv.g >= 1 ? 1 : 0, inv.g >= 1 ? 1 : 0, inv.g >= 1 ? 1 : 0, 0);
    QuotientDescriptor ab = build_quotient(QuotientKind::Abelianized, inv, arith);
    QuotientDescriptor w2 = build_quotient(QuotientKind::FullWeightTwo, inv, arith);
    CHECK(w2.pieces[1].dim_local - ab.pieces[1].dim_local == inv.g * (3 * inv.g - 1) / 2);
  }
}

TEST_CASE("all emitted dimensions are nonnegative") {
  std::vector<GeometricInvariants> cusp_data{tpl_invariants(), superelliptic_invariants(),
                                             hyp_even_negative_lc(), {2, 4, 2, 1, 2, 2}};
  for (const auto& inv : cusp_data)
    for (long long r_p = 0; r_p <= 3; ++r_p)
      for (long long h_bk = 0; h_bk <= 2; ++h_bk) {
        if (inv.g == 0 && r_p > 0) continue;
        ResolvedArithmetic arith = resolved(inv.g, r_p, r_p, inv.g >= 1 ? 1 : 0,
                                            inv.g >= 1 ? 1 : 0, inv.g >= 1 ? 2 : 0, h_bk);
        for (auto kind : {QuotientKind::Abelianized, QuotientKind::AbelianByArtinTate,
                          QuotientKind::FullWeightTwo}) {
          QuotientDescriptor desc = build_quotient(kind, inv, arith);
          for (const auto& piece : desc.pieces) {
            CHECK(piece.dim_global >= 0);
            CHECK(piece.dim_local >= 0);
          }
        }
      }
}
