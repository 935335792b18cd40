#include <random>

#include "doctest.h"
#include "foqcs/poly.hpp"
#include "foqcs/simulator.hpp"

using namespace foqcs;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(0x9017);
  return gen;
}

ModelSpec model(ModelKind kind, int n) {
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  std::uniform_real_distribution<double> u(0.3, 1.5);
  std::uniform_int_distribution<int> sign(0, 1);
  auto draw = [&] { return (sign(rng()) ? 1.0 : -1.0) * u(rng()); };
  spec.g = draw();
  spec.jx = draw();
  spec.jy = draw();
  spec.jz = draw();
  spec.j = draw();
  if (kind == ModelKind::Ising) spec.jz = 0.0;
  return spec;
}

PolySpec random_poly(int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolySpec p;
  p.coeffs.resize(d + 1);
  for (int k = 0; k <= d; ++k) p.coeffs[k] = {u(rng()), u(rng())};
  if (std::abs(p.coeffs[d]) < 0.1) p.coeffs[d] = {0.4, -0.3};
  return p;
}

CMatrix poly_of(const CMatrix& h, const PolySpec& p) {
  CMatrix acc(h.rows(), h.cols());
  CMatrix pw = CMatrix::identity(h.rows());
  for (int k = 0; k <= p.degree(); ++k) {
    acc = acc + pw * p.coeffs[k];
    pw = pw * h;
  }
  return acc;
}

CMatrix extract(const Circuit& c) {
  return extract_block(c, block_spec_from_markers(c));
}

}  // namespace

TEST_CASE("poly params") {
  SUBCASE("constant polynomial") {
    PolySpec p;
    p.coeffs = {cplx{1, 0}, cplx{0, 0}};
    const PolyParams pp = poly_params(p, 2.0);
    CHECK(pp.wbar[0] == doctest::Approx(1.0));
    CHECK(pp.wbar[1] == doctest::Approx(0.0));
    CHECK(pp.theta[0] == doctest::Approx(0.0));
  }
  SUBCASE("pure linear term") {
    PolySpec p;
    p.coeffs = {cplx{0, 0}, cplx{1, 0}};
    const PolyParams pp = poly_params(p, 1.0);
    CHECK(pp.wbar[0] == doctest::Approx(0.0));
    CHECK(pp.wbar[1] == doctest::Approx(1.0));
    CHECK(pp.theta[0] == doctest::Approx(std::numbers::pi));
  }
  SUBCASE("balanced pair") {
    PolySpec p;
    p.coeffs = {cplx{0.5, 0}, cplx{0.5, 0}};
    const PolyParams pp = poly_params(p, 1.0);
    CHECK(pp.wbar[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(pp.theta[0] == doctest::Approx(std::numbers::pi / 2));
    CHECK(pp.phi[0] == doctest::Approx(0.0));
    CHECK(pp.big_w == doctest::Approx(1.0));
  }
  SUBCASE("weights normalize") {
    for (int trial = 0; trial < 8; ++trial) {
      const PolySpec p = random_poly(3);
      const PolyParams pp = poly_params(p, 1.7);
      double s = 0.0;
      for (const double w : pp.wbar) s += w * w;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("unary loader state") {
  for (int d = 1; d <= 4; ++d) {
    const PolySpec p = random_poly(d);
    const PolyParams pp = poly_params(p, 1.3);
    const Circuit r = build_poly_r(pp);
    const StateVector out = apply(r, StateVector::zero(d));

    // amplitude-for-amplitude against the definition, phases included
    double phase_acc = 0.0;
    for (int k = 0; k <= d; ++k) {
      std::size_t idx = 0;
      for (int b = 0; b < k; ++b) idx |= std::size_t{1} << (d - 1 - b);
      const cplx want = std::polar(pp.wbar[k], phase_acc);
      CHECK(std::abs(out.amp[idx] - want) < 1e-10);
      if (k < d) phase_acc += pp.phi[k];
    }

    // unary monotonicity: support only on 1^k 0^(d-k)
    for (std::size_t x = 0; x < out.amp.size(); ++x) {
      bool unary = true;
      bool seen_zero = false;
      for (int b = 0; b < d; ++b) {
        const bool bit = (x >> (d - 1 - b)) & 1;
        if (bit && seen_zero) unary = false;
        if (!bit) seen_zero = true;
      }
      if (!unary) CHECK(std::abs(out.amp[x]) < 1e-12);
    }

    // left loader: same moduli, no phases
    const StateVector outl = apply(build_poly_l(pp), StateVector::zero(d));
    for (int k = 0; k <= d; ++k) {
      std::size_t idx = 0;
      for (int b = 0; b < k; ++b) idx |= std::size_t{1} << (d - 1 - b);
      CHECK(std::abs(outl.amp[idx] - pp.wbar[k]) < 1e-10);
    }
  }
}

TEST_CASE("loader cnot cost is 2(d-1)") {
  for (int d = 1; d <= 5; ++d) {
    const PolyParams pp = poly_params(random_poly(d), 1.0);
    CHECK(cnot_metrics(build_poly_r(pp)).cnot_count == 2 * (d - 1));
    CHECK(cnot_metrics(build_poly_l(pp)).cnot_count == 2 * (d - 1));
  }
}

TEST_CASE("power encoding") {
  SUBCASE("k=1 equals the plain encoding") {
    const ModelSpec spec = model(ModelKind::Ising, 2);
    const Circuit pw = build_power_be(spec, 1);
    const FoqcsCircuit fx = build_foqcs(spec, false);
    CHECK(extract(pw).max_diff(extract(fx.circuit)) < 1e-12);
  }
  SUBCASE("k=2 squares the block") {
    const ModelSpec spec = model(ModelKind::Ising, 2);
    const CoefficientTable table = build_table(spec);
    const CMatrix h = dense_matrix(table);
    const Circuit pw = build_power_be(spec, 2);
    CHECK(pw.num_qubits() == 5 * spec.n);
    const CMatrix want =
        (h * h) * cplx{1.0 / (table.lambda * table.lambda), 0.0};
    CHECK(extract(pw).max_diff(want) < 1e-9);
  }
}

TEST_CASE("product encoding order") {
  const ModelSpec a = model(ModelKind::Ising, 2);
  ModelSpec b;  // deliberately non-commuting with a
  b.kind = ModelKind::Custom;
  b.n = 2;
  b.custom_terms = {{"XI", cplx{0.8, 0.0}}, {"IY", cplx{0.0, 0.5}}, {"ZZ", cplx{0.3, 0.0}}};
  const CMatrix ha = dense_matrix(build_table(a));
  const CMatrix hb = dense_matrix(build_table(b));
  const double la = build_table(a).lambda, lb = build_table(b).lambda;
  const Circuit prod = build_product_be({a, b});
  const CMatrix got = extract(prod);
  const CMatrix ba = (hb * ha) * cplx{1.0 / (la * lb), 0.0};
  const CMatrix ab = (ha * hb) * cplx{1.0 / (la * lb), 0.0};
  CHECK(got.max_diff(ba) < 1e-9);  // first factor applied first
  CHECK(got.max_diff(ab) > 1e-4);  // the order genuinely matters
}

TEST_CASE("polynomial block identity") {
  for (const ModelKind kind : {ModelKind::XYZ, ModelKind::XXZ, ModelKind::Ising}) {
    for (int d = 1; d <= 3; ++d) {
      const ModelSpec spec = model(kind, 2);
      const PolySpec poly = random_poly(d);
      const CoefficientTable table = build_table(spec);
      const PolyParams pp = poly_params(poly, table.lambda);
      const CMatrix h = dense_matrix(table);
      const Circuit be = build_poly_be(spec, poly, false, true);
      const CMatrix got = extract(be);
      const cplx fix = std::polar(1.0, std::arg(poly.coeffs[0]));
      const CMatrix want = poly_of(h, poly) * (cplx{1.0 / pp.big_w, 0.0});
      CAPTURE(model_kind_name(kind));
      CAPTURE(d);
      CHECK((got * fix).max_diff(want) < 1e-8);
    }
  }
}

TEST_CASE("general and simplified forms agree") {
  for (const ModelKind kind : {ModelKind::Ising, ModelKind::XXZ}) {
    const ModelSpec spec = model(kind, 2);
    for (int d = 1; d <= 2; ++d) {
      const PolySpec poly = random_poly(d);
      const CMatrix simp = extract(build_poly_be(spec, poly, false, true));
      const CMatrix gen = extract(build_poly_be(spec, poly, false, false));
      CHECK(simp.max_diff(gen) < 1e-10);
    }
  }
}

TEST_CASE("controlled polynomial") {
  const ModelSpec spec = model(ModelKind::Ising, 2);
  const PolySpec poly = random_poly(2);
  const Circuit plain = build_poly_be(spec, poly, false, true);
  const Circuit ctrl = build_poly_be(spec, poly, true, true);

  SUBCASE("four extra CNOTs exactly") {
    CHECK(cnot_metrics(ctrl).cnot_count == cnot_metrics(plain).cnot_count + 4);
  }

  SUBCASE("subspace correctness") {
    const int n = spec.n;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    StateVector phi = StateVector::zero(n);
    for (auto& a : phi.amp) a = {u(rng()), u(rng())};
    phi.normalize();
    cplx alpha{u(rng()), u(rng())}, beta{u(rng()), u(rng())};
    const double nn = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= nn;
    beta /= nn;

    const int total = ctrl.num_qubits();
    const Register* sys = ctrl.find_register("system");
    REQUIRE(sys);
    StateVector in = StateVector::zero(total);
    in.amp[0] = 0.0;
    for (std::size_t x = 0; x < phi.amp.size(); ++x) {
      std::size_t idx = 0;
      for (int k = 0; k < n; ++k)
        if ((x >> (n - 1 - k)) & 1)
          idx |= std::size_t{1} << (total - 1 - (sys->first + k));
      in.amp[idx] += alpha * phi.amp[x];
      in.amp[idx | (std::size_t{1} << (total - 1))] += beta * phi.amp[x];
    }
    StateVector out = apply(ctrl, in);
    std::vector<int> anc;
    for (int q = 1; q < sys->first; ++q) anc.push_back(q);
    out = project_zero(out, anc);

    const CoefficientTable table = build_table(spec);
    const PolyParams pp = poly_params(poly, table.lambda);
    const CMatrix block =
        poly_of(dense_matrix(table), poly) *
        std::polar(1.0 / pp.big_w, -std::arg(poly.coeffs[0]));
    std::vector<cplx> bphi(phi.amp.size(), cplx{0, 0});
    for (std::size_t r = 0; r < bphi.size(); ++r)
      for (std::size_t cix = 0; cix < bphi.size(); ++cix)
        bphi[r] += block(r, cix) * phi.amp[cix];

    double diff = 0.0;
    for (std::size_t x = 0; x < phi.amp.size(); ++x) {
      std::size_t idx = 0;
      for (int k = 0; k < n; ++k)
        if ((x >> (n - 1 - k)) & 1)
          idx |= std::size_t{1} << (total - 1 - (sys->first + k));
      diff = std::max(diff, std::abs(out.amp[idx] - alpha * phi.amp[x]));
      diff = std::max(diff, std::abs(out.amp[idx | (std::size_t{1} << (total - 1))] -
                                     beta * bphi[x]));
    }
    CHECK(diff < 1e-8);
  }
}

TEST_CASE("taylor coefficients") {
  SUBCASE("t = 0") {
    const PolySpec p = taylor_coeffs(0.0, 3);
    CHECK(std::abs(p.coeffs[0] - cplx{1, 0}) < 1e-15);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(p.coeffs[k]) < 1e-15);
  }
  SUBCASE("t = 1, d = 2") {
    const PolySpec p = taylor_coeffs(1.0, 2);
    CHECK(std::abs(p.coeffs[1] - cplx{0, -1}) < 1e-15);
    CHECK(std::abs(p.coeffs[2] - cplx{-0.5, 0}) < 1e-15);
  }
  SUBCASE("truncation error bound on dense matrices") {
    const ModelSpec spec = model(ModelKind::XXZ, 2);
    const CMatrix h = dense_matrix(build_table(spec));
    const double t = 0.4;
    for (int d : {2, 4}) {
      const CMatrix approx = poly_of(h, taylor_coeffs(t, d));
      const CMatrix exact = expm(h * cplx{0.0, -t});
      const double bound = std::pow(h.norm_2() * t, d + 1) /
                           std::tgamma(static_cast<double>(d) + 2.0);
      CHECK((approx - exact).norm_2() <= bound * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("loschmidt echo") {
  ModelSpec spec;
  spec.kind = ModelKind::Ising;
  spec.n = 2;
  spec.g = 0.9;
  spec.j = 0.6;
  StateVector phi = StateVector::zero(2);
  phi.amp = {cplx{0.5, 0.1}, cplx{-0.3, 0.4}, cplx{0.6, 0.0}, cplx{0.2, -0.2}};
  phi.normalize();

  SUBCASE("t = 0 returns exactly one") {
    const cplx g = loschmidt_echo(spec, 0.0, 2, phi);
    CHECK(std::abs(g - cplx{1, 0}) < 1e-10);
  }
  SUBCASE("matches the dense polynomial expectation") {
    for (const double t : {0.1, 0.5}) {
      for (const int d : {2, 4}) {
        const cplx got = loschmidt_echo(spec, t, d, phi);
        const CMatrix h = dense_matrix(build_table(spec));
        const CMatrix pd = poly_of(h, taylor_coeffs(t, d));
        cplx want{0, 0};
        for (std::size_t r = 0; r < phi.amp.size(); ++r)
          for (std::size_t c = 0; c < phi.amp.size(); ++c)
            want += std::conj(phi.amp[r]) * pd(r, c) * phi.amp[c];
        CHECK(std::abs(got - want) < 1e-9);
      }
    }
  }
  SUBCASE("within the Taylor bound of the true echo") {
    const CMatrix h = dense_matrix(build_table(spec));
    for (const double t : {0.1, 0.5}) {
      for (const int d : {2, 4}) {
        const cplx got = loschmidt_echo(spec, t, d, phi);
        const CMatrix u = expm(h * cplx{0.0, -t});
        cplx want{0, 0};
        for (std::size_t r = 0; r < phi.amp.size(); ++r)
          for (std::size_t c = 0; c < phi.amp.size(); ++c)
            want += std::conj(phi.amp[r]) * u(r, c) * phi.amp[c];
        const double bound = std::pow(h.norm_2() * t, d + 1) /
                             std::tgamma(static_cast<double>(d) + 2.0);
        CHECK(std::abs(got - want) <= bound * (1.0 + 1e-9) + 1e-12);
      }
    }
  }
}

TEST_CASE("flat unary loader gives half-amplitudes at d=3") {
  PolySpec p;
  p.coeffs = {cplx{1, 0}, cplx{1, 0}, cplx{1, 0}, cplx{1, 0}};
  const PolyParams pp = poly_params(p, 1.0);
  const StateVector out = apply(build_poly_r(pp), StateVector::zero(3));
  CHECK(std::abs(out.amp[0b000] - 0.5) < 1e-12);
  CHECK(std::abs(out.amp[0b100] - 0.5) < 1e-12);
  CHECK(std::abs(out.amp[0b110] - 0.5) < 1e-12);
  CHECK(std::abs(out.amp[0b111] - 0.5) < 1e-12);
}

TEST_CASE("vanishing tail coefficients keep later ladder gates inert") {
  PolySpec p;
  p.coeffs = {cplx{0.8, 0}, cplx{0.6, 0}, cplx{0, 0}, cplx{0, 0}};
  const PolyParams pp = poly_params(p, 2.0);
  CHECK(pp.theta[2] == doctest::Approx(0.0));
  const StateVector out = apply(build_poly_r(pp), StateVector::zero(3));
  for (std::size_t x = 0; x < out.amp.size(); ++x) {
    const bool two_or_more = (x & 0b110) == 0b110;
    if (two_or_more) CHECK(std::abs(out.amp[x]) < 1e-12);
  }
}

TEST_CASE("product encoding intermediate states at the stage boundaries") {
  // two factors on n=2: after the preparation stage the ancillas hold the
  // tensor product of the two coefficient states; after the select stage
  // the system carries the corresponding operator pair products
  ModelSpec a;
  a.kind = ModelKind::Ising;
  a.n = 2;
  a.g = 0.9;
  a.j = 0.7;
  ModelSpec b;
  b.kind = ModelKind::XXZ;
  b.n = 2;
  b.j = 0.6;
  b.jz = -0.8;
  const Circuit prod = build_product_be({a, b});
  const int n = 2, total = prod.num_qubits();
  REQUIRE(total == 10);

  // split at barriers
  std::vector<Circuit> stages;
  Circuit cur(total);
  for (const auto& g : prod.gates()) {
    if (g.kind == GateKind::Barrier) {
      stages.push_back(cur);
      cur = Circuit(total);
    } else if (g.kind != GateKind::PostSelectZero) {
      cur.push(g);
    }
  }
  stages.push_back(cur);
  REQUIRE(stages.size() == 3);

  const StateVector phi = StateVector::from_bitstring("10");
  StateVector state = StateVector::zero(total);
  state.amp[0] = 0.0;
  state.amp[0b10] = 1.0;  // phi in the system register (last two qubits)

  state = apply(stages[0], state);
  {
    // prepared amplitudes factorize over the two tables
    const auto ta = build_table(a);
    const auto tb = build_table(b);
    double diff = 0.0;
    for (std::size_t x = 0; x < state.amp.size(); ++x) {
      const std::size_t sys = x & 0b11;
      const std::size_t iah = (x >> 8) & 0b11, jah = (x >> 6) & 0b11;
      const std::size_t ib = (x >> 4) & 0b11, jb = (x >> 2) & 0b11;
      cplx want{0, 0};
      if (sys == 0b10) {
        cplx wa{0, 0}, wb{0, 0};
        auto ita = ta.entries.find({static_cast<std::uint32_t>(iah),
                                    static_cast<std::uint32_t>(jah)});
        auto itb = tb.entries.find({static_cast<std::uint32_t>(ib),
                                    static_cast<std::uint32_t>(jb)});
        if (ita != ta.entries.end())
          wa = std::polar(std::sqrt(std::abs(ita->second) / ta.lambda),
                          std::arg(ita->second));
        if (itb != tb.entries.end())
          wb = std::polar(std::sqrt(std::abs(itb->second) / tb.lambda),
                          std::arg(itb->second));
        want = wa * wb;
      }
      diff = std::max(diff, std::abs(state.amp[x] - want));
    }
    CHECK(diff < 1e-12);
  }

  state = apply(stages[1], state);
  state = apply(stages[2], state);
  // final post-selected block action equals (B A / (lambda_A lambda_B)) phi
  const CMatrix ha = dense_matrix(build_table(a));
  const CMatrix hb = dense_matrix(build_table(b));
  const double la = build_table(a).lambda, lb = build_table(b).lambda;
  const CMatrix ba = (hb * ha) * cplx{1.0 / (la * lb), 0.0};
  for (std::size_t s = 0; s < 4; ++s) {
    const cplx got = state.amp[s];  // ancillas all zero in the low-index block
    CHECK(std::abs(got - ba(s, 0b10)) < 1e-10);
  }
}
