#include <benchmark/benchmark.h>

#include <freecert/certs.hpp>
#include <freecert/fock.hpp>
#include <freecert/freemap.hpp>
#include <freecert/poly.hpp>
#include <freecert/poly_text.hpp>
#include <freecert/sdp.hpp>
#include <freecert/series.hpp>

using namespace freecert;

namespace {

MatrixTuple random_tuple(int g, int n, Rng& rng) {
  std::vector<Mat> m;
  for (int j = 0; j < g; ++j) m.push_back(0.3 * rng.gaussian(n, n));
  return MatrixTuple(std::move(m));
}

FreePoly dense_poly(int g, int deg, Rng& rng) {
  FreePoly p = FreePoly::zero(g);
  std::vector<Word> frontier = {Word(std::vector<int>{})};
  for (int len = 0; len <= deg; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      p.add_term(w, Mat::Constant(1, 1, rng.cnormal()));
      if (len < deg)
        for (int j = 1; j <= g; ++j)
          next.push_back(w.concat(Word({j})));
    }
    frontier = std::move(next);
  }
  return p;
}

void bm_eval_poly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  FreePoly p = dense_poly(2, 4, rng);
  MatrixTuple x = random_tuple(2, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval_poly(p, x));
  state.SetComplexityN(n);
}
BENCHMARK(bm_eval_poly)->Arg(4)->Arg(16)->Arg(64)->Complexity();

void bm_creation_ops(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TruncatedFock fock(2, ell);
    benchmark::DoNotOptimize(fock.creation_ops());
  }
}
BENCHMARK(bm_creation_ops)->Arg(4)->Arg(6)->Arg(8);

void bm_dilate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<Mat> mats;
  for (int j = 0; j < 2; ++j) {
    Mat m = Mat::Zero(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) m(r, c) = 0.4 * rng.cnormal();
    mats.push_back(std::move(m));
  }
  MatrixTuple x(std::move(mats));
  const double r = 1.1 * std::sqrt(x.row_norm_sq());
  for (auto _ : state) benchmark::DoNotOptimize(dilate(x, r, n - 1));
}
BENCHMARK(bm_dilate)->Arg(3)->Arg(5)->Arg(7);

void bm_extract_coeffs(benchmark::State& state) {
  const int max_len = static_cast<int>(state.range(0));
  Rng rng(3);
  FreePoly p1 = dense_poly(2, 3, rng), p2 = dense_poly(2, 3, rng);
  FreeMapHandle f = poly_map({p1, p2});
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_coeffs(f, max_len, 0.5));
}
BENCHMARK(bm_extract_coeffs)->Arg(3)->Arg(5)->Arg(7);

void bm_ftheta_eval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  FreeMapHandle f = ftheta(0.9);
  auto x = sample_member(*f.domain, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(f(*x));
}
BENCHMARK(bm_ftheta_eval)->Arg(8)->Arg(32);

void bm_sdp_feasibility(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(5);
  SdpProblem p;
  p.block_dims = {n};
  for (int k = 0; k < n; ++k) {
    SdpConstraint c;
    c.data = {rng.gaussian_hermitian(n)};
    c.rhs = rng.normal();
    p.constraints.push_back(std::move(c));
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(bm_sdp_feasibility)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void bm_psatz(benchmark::State& state) {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  LinearPencil l = LinearPencil::monic({a});
  FreePoly p = parse_poly("1 - x^2");
  for (auto _ : state) benchmark::DoNotOptimize(psatz(p, l));
}
BENCHMARK(bm_psatz)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
