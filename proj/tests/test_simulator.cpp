#include <random>

#include "doctest.h"
#include "foqcs/builders.hpp"
#include "foqcs/simulator.hpp"

using namespace foqcs;

TEST_CASE("basic gate application") {
  SUBCASE("identity leaves the state alone") {
    const StateVector in = StateVector::from_bitstring("010");
    const StateVector out = apply(Circuit(3), in);
    for (std::size_t k = 0; k < in.amp.size(); ++k) CHECK(out.amp[k] == in.amp[k]);
  }
  SUBCASE("x flips") {
    Circuit c(1);
    c.x(0);
    const StateVector out = apply(c, StateVector::zero(1));
    CHECK(std::abs(out.amp[1] - 1.0) < 1e-15);
  }
  SUBCASE("msb convention: qubit 0 is the high bit") {
    Circuit c(2);
    c.x(0);
    const StateVector out = apply(c, StateVector::zero(2));
    CHECK(std::abs(out.amp[0b10] - 1.0) < 1e-15);
  }
  SUBCASE("norm preservation") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    Circuit c(4);
    c.h(0);
    c.cry(0, 2, 0.77);
    c.swap(1, 3);
    c.cz(2, 3);
    c.ry(1, -0.3);
    c.phase(3, 1.9);
    StateVector in = StateVector::zero(4);
    for (auto& a : in.amp) a = {u(rng), u(rng)};
    in.normalize();
    CHECK(apply(c, in).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("lowering equivalence on states") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    Circuit c(5);
    c.cry(0, 1, u(rng) * 3);
    c.cnot(1, 0);
    c.swap(2, 3);
    c.cnot(2, 3);
    c.cz(3, 4);
    c.swap(3, 4);
    c.h(0);
    c.cry(4, 2, u(rng));
    StateVector in = StateVector::zero(5);
    for (auto& a : in.amp) a = {u(rng), u(rng)};
    in.normalize();
    const StateVector a = apply(c, in);
    const StateVector b = apply(lower(c), in);
    // global phase factored out via the largest amplitude
    std::size_t best = 0;
    for (std::size_t k = 0; k < a.amp.size(); ++k)
      if (std::abs(a.amp[k]) > std::abs(a.amp[best])) best = k;
    const cplx ph = a.amp[best] / b.amp[best];
    double diff = 0.0;
    for (std::size_t k = 0; k < a.amp.size(); ++k)
      diff = std::max(diff, std::abs(a.amp[k] - ph * b.amp[k]));
    CHECK(diff < 1e-11);
  }
}

TEST_CASE("projection and block extraction") {
  SUBCASE("identity encoding") {
    Circuit c(3);
    c.post_select_zero(0);
    const CMatrix block = extract_block(c, {{0}, {1, 2}});
    CHECK(block.max_diff(CMatrix::identity(4)) < 1e-14);
  }
  SUBCASE("projection zeroes marked amplitudes") {
    Circuit c(2);
    c.h(0);
    c.h(1);
    const StateVector out = project_zero(apply(c, StateVector::zero(2)), {0});
    CHECK(std::abs(out.amp[0b10]) < 1e-15);
    CHECK(std::abs(out.amp[0b11]) < 1e-15);
    CHECK(out.norm() == doctest::Approx(std::sqrt(0.5)));
  }
}

TEST_CASE("hadamard test on the Ising chain") {
  ModelSpec spec;
  spec.kind = ModelKind::Ising;
  spec.n = 3;
  spec.g = 1.0;
  spec.j = 1.0;
  const StateVector phi = StateVector::from_bitstring("000");

  SUBCASE("exact X basis gives 3/5") {
    const double v = hadamard_test(spec, phi, MeasureBasis::X);
    CHECK(v == doctest::Approx(0.6).epsilon(1e-10));
  }
  SUBCASE("exact Y basis vanishes for a real expectation") {
    const double v = hadamard_test(spec, phi, MeasureBasis::Y);
    CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("sampling is seeded and converges") {
    const double exact = hadamard_test(spec, phi, MeasureBasis::X);
    const double s1 = hadamard_test(spec, phi, MeasureBasis::X, 1000000, 99);
    const double s2 = hadamard_test(spec, phi, MeasureBasis::X, 1000000, 99);
    CHECK(s1 == s2);
    CHECK(std::abs(s1 - exact) < 5e-3);
    const double s3 = hadamard_test(spec, phi, MeasureBasis::X, 10000, 7);
    CHECK(std::abs(s3 - exact) < 5e-2);
  }
}

TEST_CASE("hadamard test matches the dense oracle for random states") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const ModelKind kind : {ModelKind::XYZ, ModelKind::XXZ, ModelKind::Ising}) {
    for (int n = 2; n <= 4; ++n) {
      ModelSpec spec;
      spec.kind = kind;
      spec.n = n;
      spec.g = 0.9;
      spec.jx = 0.7;
      spec.jy = -0.4;
      spec.jz = kind == ModelKind::Ising ? 0.0 : 0.5;
      spec.j = 0.8;
      const CoefficientTable table = build_table(spec);
      const CMatrix h = dense_matrix(table);
      for (int trial = 0; trial < 20; ++trial) {
        StateVector phi = StateVector::zero(n);
        for (auto& a : phi.amp) a = {u(rng), u(rng)};
        phi.normalize();
        cplx expect{0.0, 0.0};
        for (std::size_t r = 0; r < phi.amp.size(); ++r)
          for (std::size_t cix = 0; cix < phi.amp.size(); ++cix)
            expect += std::conj(phi.amp[r]) * h(r, cix) * phi.amp[cix];
        const double re = hadamard_test(spec, phi, MeasureBasis::X);
        const double im = hadamard_test(spec, phi, MeasureBasis::Y);
        CHECK(re == doctest::Approx(expect.real() / table.lambda).epsilon(1e-9));
        CHECK(std::abs(im - expect.imag() / table.lambda) < 1e-10);
      }
    }
  }
}

TEST_CASE("success probability") {
  ModelSpec spec;
  spec.kind = ModelKind::Ising;
  spec.n = 3;
  spec.g = 1.0;
  spec.j = 1.0;
  const FoqcsCircuit enc = build_foqcs(spec, false);
  const double p =
      success_probability(enc.circuit, StateVector::from_bitstring("000"));
  CHECK(p == doctest::Approx(11.0 / 25.0).epsilon(1e-10));
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

#ifdef _OPENMP
#include <omp.h>

TEST_CASE("apply is bit-identical across thread counts") {
  ModelSpec spec;
  spec.kind = ModelKind::XYZ;
  spec.n = 4;
  spec.g = 0.9;
  spec.jx = 0.7;
  spec.jy = -0.4;
  spec.jz = 0.5;
  const Circuit c = lower(build_foqcs(spec, false).circuit);
  StateVector in = StateVector::zero(c.num_qubits());
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& a : in.amp) a = {u(rng), u(rng)};
  in.normalize();

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const StateVector one = apply(c, in);
  omp_set_num_threads(2);
  const StateVector two = apply(c, in);
  omp_set_num_threads(saved);
  bool identical = true;
  for (std::size_t k = 0; k < one.amp.size(); ++k)
    identical = identical && one.amp[k] == two.amp[k];
  CHECK(identical);
}
#endif
