#include "siegelkit/exactmat.hpp"

namespace siegelkit {

BigInt height(const RationalMatrix& m) {
  BigInt best(1);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      BigInt num = abs(numerator(m(i, j)));
      BigInt den = denominator(m(i, j));
      if (num > best) best = num;
      if (den > best) best = den;
    }
  return best;
}

BigInt height(const IntegerMatrix& m) { return height(to_rational(m)); }

BigInt denominator(const RationalMatrix& m) {
  BigInt best(1);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      BigInt den = denominator(m(i, j));
      if (den > best) best = den;
    }
  return best;
}

namespace {

/// Fraction-free Bareiss elimination; the matrix is consumed.
BigInt det_bareiss(IntegerMatrix m) {
  const Index n = m.rows();
  int sign = 1;
  BigInt prev(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return BigInt(0);
      m.row(k).swap(m.row(r));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

}  // namespace

BigInt det(const IntegerMatrix& m) {
  require_square(m, "det");
  return det_bareiss(m);
}

Rational det(const RationalMatrix& m) {
  require_square(m, "det");
  const Index n = m.rows();
  // Clear each row's denominators, run Bareiss over the integers, divide
  // the scale factors back out.
  IntegerMatrix z(n, n);
  BigInt scale(1);
  for (Index i = 0; i < n; ++i) {
    BigInt l(1);
    for (Index j = 0; j < n; ++j) l = lcm(l, denominator(m(i, j)));
    for (Index j = 0; j < n; ++j) z(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    scale *= l;
  }
  return Rational(det_bareiss(std::move(z))) / Rational(scale);
}

bool is_unimodular(const IntegerMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  BigInt d = det(m);
  return d == 1 || d == -1;
}

namespace {

/// Extended Euclid: returns (g, p, q) with p*a + q*b = g = gcd(a, b) >= 0.
struct Xgcd {
  BigInt g, p, q;
};

Xgcd xgcd(BigInt a, BigInt b) {
  BigInt p0(1), q0(0), p1(0), q1(1);
  while (b != 0) {
    BigInt quot = a / b;  // truncated; any consistent choice works
    BigInt r = a - quot * b;
    a = b;
    b = r;
    BigInt p2 = p0 - quot * p1;
    BigInt q2 = q0 - quot * q1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (a < 0) return {-a, -p0, -q0};
  return {a, p0, q0};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HnfResult hnf(const IntegerMatrix& m) {
  require_square(m, "hnf");
  const Index n = m.rows();
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::Identity(n, n);

  for (Index j = 0; j < n; ++j) {
    if (h(j, j) == 0) {
      Index r = j + 1;
      while (r < n && h(r, j) == 0) ++r;
      if (r < n) {
        h.row(j).swap(h.row(r));
        u.row(j).swap(u.row(r));
      }
    }
    for (Index i = j + 1; i < n; ++i) {
      if (h(i, j) == 0) continue;
      auto [g, p, q] = xgcd(h(j, j), h(i, j));
      BigInt a = h(j, j) / g;
      BigInt b = h(i, j) / g;
      for (Index k = 0; k < n; ++k) {
        BigInt hj = h(j, k), hi = h(i, k);
        h(j, k) = p * hj + q * hi;
        h(i, k) = a * hi - b * hj;
        BigInt uj = u(j, k), ui = u(i, k);
        u(j, k) = p * uj + q * ui;
        u(i, k) = a * ui - b * uj;
      }
    }
    if (h(j, j) == 0)
      throw SingularMatrix("hnf requires det != 0: column " + std::to_string(j + 1) +
                           " vanished during elimination");
    if (h(j, j) < 0) {
      h.row(j) = -h.row(j);
      u.row(j) = -u.row(j);
    }
    for (Index i = 0; i < j; ++i) {
      BigInt q = floor_div(h(i, j), h(j, j));
      if (q != 0) {
        h.row(i) -= q * h.row(j);
        u.row(i) -= q * u.row(j);
      }
    }
  }
  return {std::move(h), std::move(u)};
}

RationalMatrix inverse(const RationalMatrix& m) {
  require_square(m, "inverse");
  if (det(m) == 0) throw SingularMatrix("inverse requires det != 0");
  // Gauss-Jordan with exact arithmetic; the pivot search only needs a
  // nonzero entry.
  const Index n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (Index k = 0; k < n; ++k) {
    Index r = k;
    while (r < n && a(r, k) == 0) ++r;
    if (r == n) throw SingularMatrix("inverse requires det != 0");
    if (r != k) {
      a.row(k).swap(a.row(r));
      inv.row(k).swap(inv.row(r));
    }
    Rational piv = a(k, k);
    for (Index j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool is_positive_definite(const RationalMatrix& m) {
  require_square(m, "is_positive_definite");
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i)) return false;
  for (Index k = 1; k <= n; ++k) {
    RationalMatrix lead = m.topLeftCorner(k, k);
    if (det(lead) <= 0) return false;
  }
  return true;
}

}  // namespace siegelkit
