#include "latcor/exactmat.hpp"

#include <cctype>
#include <utility>

namespace latcor {

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw Error(Errc::InvalidArgument, "floor_div: division by zero");
  Integer q = a / b;  // truncates toward zero
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
  Integer m = abs(b);
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

namespace {

bool parse_digits(const std::string& text, std::size_t begin, std::size_t end, bool allow_sign) {
  if (begin < end && allow_sign && (text[begin] == '-' || text[begin] == '+')) ++begin;
  if (begin >= end) return false;
  for (std::size_t i = begin; i < end; ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!parse_digits(text, 0, text.size(), true))
      throw Error(Errc::ParseError, "malformed rational '" + text + "'");
    return Rational(Integer(text[0] == '+' ? text.substr(1) : text));
  }
  if (!parse_digits(text, 0, slash, true) || !parse_digits(text, slash + 1, text.size(), false))
    throw Error(Errc::ParseError, "malformed rational '" + text + "'");
  std::string num_text = text.substr(0, slash);
  if (num_text[0] == '+') num_text.erase(0, 1);
  Integer num(num_text);
  Integer den(text.substr(slash + 1));
  if (den <= 0) throw Error(Errc::ParseError, "rational '" + text + "' needs a positive denominator");
  if (gcd(num, den) != 1)
    throw Error(Errc::ParseError, "rational '" + text + "' is not in lowest terms");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const Integer& z) { return z.str(); }

bool is_integral(const RatMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_integer(a(i, j))) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j)))
        throw Error(Errc::NotIntegral, "entry " + to_string(a(i, j)) + " is not an integer");
      out(i, j) = numerator(a(i, j));
    }
  return out;
}

IntVector to_integer(const RatVector& a) {
  RatMatrix m = a;
  return to_integer(m).col(0);
}

Integer common_denominator(const RatMatrix& a) {
  Integer den = 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) den = lcm(den, denominator(a(i, j)));
  return den;
}

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::InvalidArgument, "inverse: matrix is not square");
  const Eigen::Index n = a.rows();
  RatMatrix work = a;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error(Errc::SingularMatrix, "matrix is singular");
    if (pivot != col) {
      work.row(col).swap(work.row(pivot));
      inv.row(col).swap(inv.row(pivot));
    }
    const Rational scale = Rational(1) / work(col, col);
    work.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || work(i, col) == 0) continue;
      const Rational factor = work(i, col);
      work.row(i) -= factor * work.row(col);
      inv.row(i) -= factor * inv.row(col);
    }
  }
  return inv;
}

HermiteDecomposition hnf(const IntMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  HermiteDecomposition out{a, IntMatrix::Identity(m, m), 0};
  IntMatrix& h = out.h;
  IntMatrix& t = out.t;

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    bool has_pivot = false;
    while (true) {
      // smallest nonzero entry on or below the current row
      Eigen::Index pivot = -1;
      for (Eigen::Index i = row; i < m; ++i) {
        if (h(i, col) == 0) continue;
        if (pivot < 0 || abs(h(i, col)) < abs(h(pivot, col))) pivot = i;
      }
      if (pivot < 0) break;
      has_pivot = true;
      if (pivot != row) {
        h.row(row).swap(h.row(pivot));
        t.row(row).swap(t.row(pivot));
      }
      bool cleared = true;
      for (Eigen::Index i = row + 1; i < m; ++i) {
        if (h(i, col) == 0) continue;
        const Integer q = floor_div(h(i, col), h(row, col));
        h.row(i) -= q * h.row(row);
        t.row(i) -= q * t.row(row);
        if (h(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    if (h(row, col) < 0) {
      h.row(row) = -h.row(row);
      t.row(row) = -t.row(row);
    }
    for (Eigen::Index i = 0; i < row; ++i) {
      const Integer q = floor_div(h(i, col), h(row, col));
      if (q == 0) continue;
      h.row(i) -= q * h.row(row);
      t.row(i) -= q * t.row(row);
    }
    ++row;
  }
  out.rank = row;
  return out;
}

std::vector<Integer> SmithDecomposition::divisors() const {
  std::vector<Integer> out;
  for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithDecomposition snf(const IntMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  SmithDecomposition out{a, IntMatrix::Identity(m, m), IntMatrix::Identity(n, n)};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    while (true) {
      Eigen::Index pi = -1;
      Eigen::Index pj = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi < 0 || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) return out;  // remaining block is zero

      if (pi != t) {
        d.row(t).swap(d.row(pi));
        u.row(t).swap(u.row(pi));
      }
      if (pj != t) {
        d.col(t).swap(d.col(pj));
        v.col(t).swap(v.col(pj));
      }
      if (d(t, t) < 0) {
        d.row(t) = -d.row(t);
        u.row(t) = -u.row(t);
      }

      bool cleared = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = floor_div(d(i, t), d(t, t));
        d.row(i) -= q * d.row(t);
        u.row(i) -= q * u.row(t);
        if (d(i, t) != 0) cleared = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = floor_div(d(t, j), d(t, t));
        d.col(j) -= q * d.col(t);
        v.col(j) -= q * v.col(t);
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // divisibility: pull an offending row up and reduce again
      bool divides = true;
      for (Eigen::Index i = t + 1; i < m && divides; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.row(t) += d.row(i);
            u.row(t) += u.row(i);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  return out;
}

LdltDecomposition rational_cholesky(const RatMatrix& g) {
  if (!is_symmetric(g)) throw Error(Errc::NotSymmetric, "rational_cholesky: matrix is not symmetric");
  const Eigen::Index n = g.rows();
  LdltDecomposition out{RatMatrix::Identity(n, n), RatVector::Zero(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational pivot = g(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= out.l(j, k) * out.l(j, k) * out.d(k);
    if (pivot <= 0)
      throw Error(Errc::NotPositiveDefinite,
                  "pivot " + std::to_string(j) + " is " + to_string(pivot) + ", form is not positive definite");
    out.d(j) = pivot;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Rational s = g(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= out.l(i, k) * out.l(j, k) * out.d(k);
      out.l(i, j) = s / pivot;
    }
  }
  return out;
}

bool is_positive_definite(const RatMatrix& g) {
  try {
    rational_cholesky(g);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotPositiveDefinite) return false;
    throw;
  }
}

}  // namespace latcor
