#include "ccpsem/tensor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccpsem/errors.hpp"

namespace ccpsem {

Vocabulary::Vocabulary(const std::vector<std::string>& words) {
  for (const auto& w : words) intern(w);
}

std::size_t Vocabulary::intern(const std::string& word) {
  auto [it, inserted] = index_.emplace(word, words_.size());
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<std::size_t> Vocabulary::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::index(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) throw UnknownWord("unknown word '" + word + "'");
  return it->second;
}

Tensor Tensor::zeros(std::vector<Vocabulary> axes) {
  if (axes.empty() || axes.size() > 4) throw RankMismatch("tensor rank must be 1..4");
  Tensor t;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  t.axes_ = std::move(axes);
  t.data_.assign(n, 0.0);
  return t;
}

Tensor Tensor::vector(const Vocabulary& vocab, std::vector<double> values) {
  if (values.size() != vocab.size()) throw ShapeMismatch("vector length differs from vocabulary");
  Tensor t = zeros({vocab});
  t.data_ = std::move(values);
  return t;
}

Tensor Tensor::matrix(const Vocabulary& rows, const Vocabulary& cols,
                      const std::vector<std::vector<double>>& values) {
  Tensor t = zeros({rows, cols});
  if (values.size() != rows.size()) throw ShapeMismatch("matrix row count differs");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (values[i].size() != cols.size()) throw ShapeMismatch("matrix column count differs");
    for (std::size_t j = 0; j < cols.size(); ++j) t.data_[i * cols.size() + j] = values[i][j];
  }
  return t;
}

std::vector<std::size_t> Tensor::dims() const {
  std::vector<std::size_t> d;
  for (const auto& a : axes_) d.push_back(a.size());
  return d;
}

std::size_t Tensor::offset(const std::vector<std::size_t>& index) const {
  if (index.size() != axes_.size()) throw RankMismatch("index rank differs from tensor rank");
  std::size_t off = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (index[a] >= axes_[a].size()) throw ShapeMismatch("index out of range");
    off = off * axes_[a].size() + index[a];
  }
  return off;
}

std::vector<std::size_t> Tensor::unravel(std::size_t off) const {
  std::vector<std::size_t> index(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    index[a] = off % axes_[a].size();
    off /= axes_[a].size();
  }
  return index;
}

double Tensor::at_words(const std::vector<std::string>& words) const {
  if (words.size() != axes_.size()) throw RankMismatch("word tuple rank differs");
  std::vector<std::size_t> index;
  for (std::size_t a = 0; a < words.size(); ++a) index.push_back(axes_[a].index(words[a]));
  return at(index);
}

Tensor Tensor::extended(const std::vector<Vocabulary>& axes) const {
  if (axes.size() != axes_.size()) throw RankMismatch("extension changes rank");
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const auto& old = axes_[a].words();
    const auto& neu = axes[a].words();
    if (neu.size() < old.size() || !std::equal(old.begin(), old.end(), neu.begin()))
      throw ShapeMismatch("vocabulary is not an extension");
  }
  Tensor t = zeros(axes);
  for (std::size_t off = 0; off < data_.size(); ++off)
    t.data_[t.offset(unravel(off))] = data_[off];
  return t;
}

namespace {

void require_same(const Tensor& u, const Tensor& v, const char* op) {
  if (!u.same_shape(v)) throw ShapeMismatch(std::string(op) + ": operands differ in shape");
}

void require_rank(const Tensor& t, std::size_t r, const char* op) {
  if (t.rank() != r)
    throw RankMismatch(std::string(op) + ": expected rank " + std::to_string(r) + ", got " +
                       std::to_string(t.rank()));
}

}  // namespace

Tensor scalar_mul(double r, const Tensor& v) {
  Tensor out = v;
  for (double& x : out.data()) x *= r;
  return out;
}

Tensor pointwise_add(const Tensor& u, const Tensor& v) {
  require_same(u, v, "pointwise_add");
  Tensor out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += v.data()[i];
  return out;
}

Tensor pointwise_mul(const Tensor& u, const Tensor& v) {
  require_same(u, v, "pointwise_mul");
  Tensor out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= v.data()[i];
  return out;
}

Tensor contract1(const Tensor& m, const Tensor& v) {
  require_rank(m, 2, "contract1");
  require_rank(v, 1, "contract1");
  if (m.axis(1) != v.axis(0)) throw ShapeMismatch("contract1: column vocabulary differs from vector");
  const std::size_t rows = m.axis(0).size(), cols = m.axis(1).size();
  Tensor out = Tensor::zeros({m.axis(0)});
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += m.data()[i * cols + j] * v.data()[j];
    out.data()[i] = s;
  }
  return out;
}

Tensor contract2(const Tensor& c, const Tensor& v) {
  require_rank(c, 3, "contract2");
  require_rank(v, 1, "contract2");
  if (c.axis(2) != v.axis(0)) throw ShapeMismatch("contract2: third vocabulary differs from vector");
  const std::size_t n0 = c.axis(0).size(), n1 = c.axis(1).size(), n2 = c.axis(2).size();
  Tensor out = Tensor::zeros({c.axis(0), c.axis(1)});
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n2; ++k) s += c.data()[(i * n1 + j) * n2 + k] * v.data()[k];
      out.data()[i * n1 + j] = s;
    }
  return out;
}

double dot(const Tensor& u, const Tensor& v) {
  require_same(u, v, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u.data()[i] * v.data()[i];
  return s;
}

double norm(const Tensor& v) { return std::sqrt(dot(v, v)); }

double cosine(const Tensor& u, const Tensor& v) {
  require_same(u, v, "cosine");
  double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw ZeroVector("cosine of a zero vector");
  double c = dot(u, v) / (nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

Tensor rotate(const Tensor& u, const Tensor& v, int sign, RotationMode mode) {
  require_rank(u, 1, "rotate");
  require_same(u, v, "rotate");
  const double sg = sign < 0 ? -1.0 : 1.0;
  double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw DegenerateSpan("rotate: zero vector");
  Tensor uh = scalar_mul(1.0 / nu, u), vh = scalar_mul(1.0 / nv, v);
  double a = std::clamp(dot(uh, vh), -1.0, 1.0);
  double s = std::sqrt(1.0 - a * a);
  Tensor mean = scalar_mul(0.5, pointwise_add(u, v));

  if (mode == RotationMode::Literal2D) {
    if (u.size() != 2) throw ShapeMismatch("rotate: literal mode needs dimension 2");
    Tensor out = mean;
    const double x = mean.data()[0], y = mean.data()[1];
    out.data()[0] = a * x + sg * s * y;
    out.data()[1] = -sg * s * x + a * y;
    return out;
  }

  // e1 = u^, e2 = unit part of v^ orthogonal to u^
  Tensor w = pointwise_add(vh, scalar_mul(-a, uh));
  double nw = norm(w);
  if (nw < 1e-12) {
    if (a > 0) return mean;
    throw DegenerateSpan("rotate: vectors are opposite");
  }
  Tensor e2 = scalar_mul(1.0 / nw, w);
  const double x = dot(mean, uh), y = dot(mean, e2);
  Tensor residual = pointwise_add(mean, pointwise_add(scalar_mul(-x, uh), scalar_mul(-y, e2)));
  const double x2 = a * x + sg * s * y;
  const double y2 = -sg * s * x + a * y;
  return pointwise_add(residual, pointwise_add(scalar_mul(x2, uh), scalar_mul(y2, e2)));
}

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_tensor(std::ostream& out, const Tensor& t) {
  out << "tensor rank=" << t.rank() << " dims=";
  auto dims = t.dims();
  for (std::size_t a = 0; a < dims.size(); ++a) out << (a ? "," : "") << dims[a];
  out << '\n';
  for (const auto& axis : t.axes()) {
    for (std::size_t i = 0; i < axis.size(); ++i) out << (i ? " " : "") << axis.word(i);
    out << '\n';
  }
  const std::size_t row = dims.back();
  for (std::size_t off = 0; off < t.size(); off += row) {
    for (std::size_t k = 0; k < row; ++k) out << (k ? "\t" : "") << format_real(t.data()[off + k]);
    out << '\n';
  }
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

double parse_real(const std::string& tok, double epsilon, std::size_t lineno) {
  if (tok == "eps") return epsilon;
  double x = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(x))
    throw ParseError("bad number '" + tok + "'", lineno);
  return x;
}

}  // namespace

Tensor read_tensor(std::istream& in, double epsilon) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError("missing tensor header", lineno);
  std::istringstream header(line);
  std::string word, rank_field, dims_field;
  header >> word >> rank_field >> dims_field;
  if (word != "tensor" || rank_field.rfind("rank=", 0) != 0 || dims_field.rfind("dims=", 0) != 0)
    throw ParseError("expected 'tensor rank=<r> dims=<n1>,...'", lineno);
  std::size_t rank = 0;
  try {
    rank = std::stoul(rank_field.substr(5));
  } catch (const std::exception&) {
    throw ParseError("bad rank", lineno);
  }
  std::vector<std::size_t> dims;
  std::stringstream ds(dims_field.substr(5));
  for (std::string d; std::getline(ds, d, ',');) {
    try {
      dims.push_back(std::stoul(d));
    } catch (const std::exception&) {
      throw ParseError("bad dimension '" + d + "'", lineno);
    }
  }
  if (rank < 1 || rank > 4 || dims.size() != rank)
    throw ParseError("rank must be 1..4 and match the dims list", lineno);

  std::vector<Vocabulary> axes;
  for (std::size_t a = 0; a < rank; ++a) {
    if (!next_content_line(in, line, lineno)) throw ParseError("missing vocabulary line", lineno);
    std::istringstream ws(line);
    std::vector<std::string> words;
    for (std::string w; ws >> w;) words.push_back(w);
    Vocabulary v(words);
    if (v.size() != words.size() || v.size() != dims[a])
      throw ParseError("vocabulary line does not match dims (or repeats a word)", lineno);
    axes.push_back(v);
  }
  Tensor t = Tensor::zeros(axes);
  const std::size_t row = dims.back();
  for (std::size_t off = 0; off < t.size(); off += row) {
    if (!next_content_line(in, line, lineno)) throw ParseError("missing data row", lineno);
    std::istringstream vs(line);
    std::size_t k = 0;
    for (std::string tok; vs >> tok; ++k) {
      if (k >= row) throw ParseError("too many values in row", lineno);
      t.data()[off + k] = parse_real(tok, epsilon, lineno);
    }
    if (k != row) throw ParseError("too few values in row", lineno);
  }
  if (next_content_line(in, line, lineno)) throw ParseError("trailing data", lineno);
  return t;
}

void save_tensor(const std::string& path, const Tensor& t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_tensor(out, t);
}

Tensor load_tensor(const std::string& path, double epsilon) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  return read_tensor(in, epsilon);
}

}  // namespace ccpsem
