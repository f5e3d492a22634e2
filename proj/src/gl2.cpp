#include "siegelkit/gl2.hpp"

#include <algorithm>

#include "siegelkit/exactmat.hpp"

namespace siegelkit {

UpperHalfPoint mobius(const RealMatrix& g, const UpperHalfPoint& z) {
  if (g.rows() != 2 || g.cols() != 2) throw ShapeError("mobius requires a 2x2 matrix");
  BigFloat detg = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (detg <= 0) throw DomainError("mobius requires det > 0");
  if (z.im <= 0) throw DomainError("mobius requires im(z) > 0");
  BigFloat nr = g(0, 0) * z.re + g(0, 1);
  BigFloat ni = g(0, 0) * z.im;
  BigFloat dr = g(1, 0) * z.re + g(1, 1);
  BigFloat di = g(1, 0) * z.im;
  BigFloat norm = dr * dr + di * di;
  return {(nr * dr + ni * di) / norm, (ni * dr - nr * di) / norm};
}

FundamentalDomainCert reduce_point(const UpperHalfPoint& z, const Precision& prec) {
  ScopedPrecision scope(prec);
  if (z.im <= 0) throw DomainError("reduce_point requires im(z) > 0");

  UpperHalfPoint p = z;
  IntegerMatrix delta = IntegerMatrix::Identity(2, 2);
  // Inversion hysteresis keeps the loop from ping-ponging on |z| = 1.
  const BigFloat guard = pow2(-(prec.bits / 2));
  const int max_rounds = 100000;
  for (int round = 0; round < max_rounds; ++round) {
    BigInt k = round_to_int(p.re);
    if (k != 0) {
      p.re -= BigFloat(k);
      delta.row(0) -= k * delta.row(1);  // T^-k
    }
    if (p.re * p.re + p.im * p.im < 1 - guard) {
      // z -> -1/z, delta -> S delta.
      BigFloat norm = p.re * p.re + p.im * p.im;
      p = {-p.re / norm, p.im / norm};
      IntegerMatrix s(2, 2);
      s << BigInt(0), BigInt(-1), BigInt(1), BigInt(0);
      delta = (s * delta).eval();
    } else {
      return {p, std::move(delta)};
    }
  }
  throw PrecisionExhausted("reduce_point did not settle near the domain boundary; retry with "
                           "more bits");
}

std::vector<IntegerMatrix> isogeny_matrices(const BigInt& N) {
  if (N < 1) throw DomainError("isogeny_matrices requires N >= 1");
  std::vector<BigInt> divisors;
  for (BigInt a(1); a * a <= N; ++a) {
    if (N % a != 0) continue;
    divisors.push_back(a);
    if (a * a != N) divisors.push_back(N / a);
  }
  std::sort(divisors.begin(), divisors.end());

  std::vector<IntegerMatrix> out;
  for (const BigInt& a : divisors) {
    BigInt d = N / a;
    for (BigInt b(0); b < d; ++b) {
      IntegerMatrix m(2, 2);
      m << a, b, BigInt(0), d;
      out.push_back(std::move(m));
    }
  }
  return out;
}

Gl2Result hp_experiment(const UpperHalfPoint& x, int n_max, const Precision& prec,
                        const BigFloat& tol) {
  ScopedPrecision scope(prec);
  if (x.im <= 0) throw DomainError("hp_experiment requires im(x) > 0");
  if (!(abs(x.re) <= BigFloat(1) / 2 + tol && x.re * x.re + x.im * x.im >= 1 - tol))
    throw DomainError("hp_experiment requires the base point inside the fundamental domain");

  Gl2Result result;
  result.summary.max_ratio = 0;
  std::vector<std::pair<double, double>> fit_pts;

  for (int nn = 1; nn <= n_max; ++nn) {
    BigInt N(nn);
    BigFloat n_real(N);
    BigInt max_h(0);
    int idx = 0;
    for (const IntegerMatrix& m : isogeny_matrices(N)) {
      UpperHalfPoint y = mobius(integer_lift(m), x);
      FundamentalDomainCert cert = reduce_point(y, prec);
      IntegerMatrix gamma = cert.delta * m;
      BigInt h = height(gamma);

      // Independent re-check that gamma maps the base point into the domain.
      UpperHalfPoint gx = mobius(integer_lift(gamma), x);
      if (!(abs(gx.re) <= BigFloat(1) / 2 + tol && gx.re * gx.re + gx.im * gx.im >= 1 - tol))
        ++result.summary.cert_violations;

      Gl2Record rec;
      rec.N = N;
      rec.idx = idx++;
      rec.a = m(0, 0);
      rec.b = m(0, 1);
      rec.d = m(1, 1);
      rec.H = h;
      rec.ratio = BigFloat(h) / n_real;
      if (rec.ratio > result.summary.max_ratio) result.summary.max_ratio = rec.ratio;
      if (h > max_h) max_h = h;
      result.records.push_back(std::move(rec));
    }
    fit_pts.emplace_back(static_cast<double>(log(BigFloat(N))),
                         static_cast<double>(log(BigFloat(max_h))));
  }

  result.summary.count = result.records.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [lx, ly] : fit_pts) {
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double count = static_cast<double>(fit_pts.size());
  double denom = count * sxx - sx * sx;
  result.summary.slope = denom > 1e-12 ? (count * sxy - sx * sy) / denom : 0.0;
  return result;
}

}  // namespace siegelkit
