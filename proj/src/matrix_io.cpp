#include "siegelkit/matrix.hpp"

#include "json.hpp"

#include <sstream>
#include <vector>

namespace siegelkit {

BigFloat max_abs(const RealMatrix& m) {
  BigFloat best(0);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (abs(m(i, j)) > best) best = abs(m(i, j));
  return best;
}

BigFloat max_abs(const RealVector& v) {
  BigFloat best(0);
  for (Index i = 0; i < v.size(); ++i)
    if (abs(v(i)) > best) best = abs(v(i));
  return best;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
  IntegerMatrix z(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1)
        throw DomainError("to_integer: entry " + to_string(m(i, j)) + " is not an integer");
      z(i, j) = numerator(m(i, j));
    }
  return z;
}

RealMatrix rational_lift(const RationalMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = BigFloat(m(i, j));
  return r;
}

RealMatrix integer_lift(const IntegerMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = BigFloat(m(i, j));
  return r;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw IoError("matrix text has no rows");
  Index n = static_cast<Index>(rows.size());
  for (const auto& r : rows)
    if (static_cast<Index>(r.size()) != n)
      throw IoError("matrix text is not square: " + std::to_string(rows.size()) + " rows, row with " +
                    std::to_string(r.size()) + " entries");
  RationalMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  require_square(m, "parsed matrix");
  return m;
}

}  // namespace

RationalMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  for (const std::string& row_text : split(text, ';')) {
    std::istringstream is(row_text);
    std::vector<Rational> row;
    std::string tok;
    while (is >> tok) row.push_back(parse_rational(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

RationalMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("matrix JSON parse failure: ") + e.what());
  }
  if (!j.is_array()) throw IoError("matrix JSON must be an array of arrays of strings");
  std::vector<std::vector<Rational>> rows;
  for (const auto& jr : j) {
    if (!jr.is_array()) throw IoError("matrix JSON must be an array of arrays of strings");
    std::vector<Rational> row;
    for (const auto& je : jr) {
      if (je.is_string())
        row.push_back(parse_rational(je.get<std::string>()));
      else if (je.is_number_integer())
        row.push_back(Rational(BigInt(je.get<long long>())));
      else
        throw IoError("matrix JSON entries must be strings or integers");
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

RationalMatrix parse_matrix_any(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[') return parse_matrix_json(text);
    break;
  }
  return parse_matrix_text(text);
}

std::string format_matrix_text(const RationalMatrix& m) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
  }
  return os.str();
}

std::string format_matrix_text(const IntegerMatrix& m) { return format_matrix_text(to_rational(m)); }

namespace {

template <typename Mat, typename Fmt>
std::string display(const Mat& m, Fmt&& fmt) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    os << '[';
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << fmt(m(i, j));
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace

std::string format_matrix_display(const RealMatrix& m, int digits) {
  return display(m, [digits](const BigFloat& x) { return to_string(x, digits); });
}

std::string format_matrix_display(const RationalMatrix& m) {
  return display(m, [](const Rational& x) { return to_string(x); });
}

std::string format_matrix_display(const IntegerMatrix& m) {
  return display(m, [](const BigInt& x) { return x.str(); });
}

}  // namespace siegelkit
