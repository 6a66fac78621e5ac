#ifndef CCPSEM_TENSOR_HPP
#define CCPSEM_TENSOR_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccpsem {

// Ordered word list; position i is the index of words()[i].
class Vocabulary {
public:
  Vocabulary() = default;
  explicit Vocabulary(const std::vector<std::string>& words);

  // Returns the index of word, appending it first if absent.
  std::size_t intern(const std::string& word);
  std::optional<std::size_t> find(const std::string& word) const;
  // Throws UnknownWord.
  std::size_t index(const std::string& word) const;
  bool contains(const std::string& word) const { return index_.count(word) > 0; }

  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t i) const { return words_.at(i); }
  std::size_t size() const { return words_.size(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.words_ == b.words_; }
  friend bool operator!=(const Vocabulary& a, const Vocabulary& b) { return !(a == b); }

private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Dense row-major real tensor of rank 1..4 with one vocabulary per axis.
class Tensor {
public:
  Tensor() = default;
  static Tensor zeros(std::vector<Vocabulary> axes);
  static Tensor vector(const Vocabulary& vocab, std::vector<double> values);
  static Tensor matrix(const Vocabulary& rows, const Vocabulary& cols,
                       const std::vector<std::vector<double>>& values);

  std::size_t rank() const { return axes_.size(); }
  const std::vector<Vocabulary>& axes() const { return axes_; }
  const Vocabulary& axis(std::size_t i) const { return axes_.at(i); }
  std::vector<std::size_t> dims() const;
  std::size_t size() const { return data_.size(); }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  std::size_t offset(const std::vector<std::size_t>& index) const;
  std::vector<std::size_t> unravel(std::size_t offset) const;
  double at(const std::vector<std::size_t>& index) const { return data_[offset(index)]; }
  double& at(const std::vector<std::size_t>& index) { return data_[offset(index)]; }
  // Lookup by words, one per axis. Throws UnknownWord.
  double at_words(const std::vector<std::string>& words) const;

  // Same values laid out over larger vocabularies that extend the current ones.
  Tensor extended(const std::vector<Vocabulary>& axes) const;

  bool same_shape(const Tensor& other) const { return axes_ == other.axes_; }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.axes_ == b.axes_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

private:
  std::vector<Vocabulary> axes_;
  std::vector<double> data_;
};

Tensor scalar_mul(double r, const Tensor& v);
// Elementwise over identical shapes; ShapeMismatch otherwise.
Tensor pointwise_add(const Tensor& u, const Tensor& v);
Tensor pointwise_mul(const Tensor& u, const Tensor& v);
// sum_j m[i][j] v[j]
Tensor contract1(const Tensor& m, const Tensor& v);
// sum_k c[i][j][k] v[k]
Tensor contract2(const Tensor& c, const Tensor& v);
// sum_i u[i] v[i], in index order.
double dot(const Tensor& u, const Tensor& v);
double norm(const Tensor& v);
// Throws ZeroVector.
double cosine(const Tensor& u, const Tensor& v);

enum class RotationMode { Literal2D, GeneralSpan };

// Rotates (u+v)/2 by the angle whose cosine is <u^|v^>. The 2-D mode uses
// the printed 2x2 matrix; the general mode rotates inside span{u, v}.
Tensor rotate(const Tensor& u, const Tensor& v, int sign,
              RotationMode mode = RotationMode::GeneralSpan);

// Shortest decimal text that reads back to the same double.
std::string format_real(double x);

// Header `tensor rank=<r> dims=<n1>,...`, one vocabulary line per axis,
// then rows of tab separated values (last axis varies along a row).
// A value token `eps` reads as epsilon; '#' lines are comments.
void write_tensor(std::ostream& out, const Tensor& t);
Tensor read_tensor(std::istream& in, double epsilon = 0.0);
void save_tensor(const std::string& path, const Tensor& t);
Tensor load_tensor(const std::string& path, double epsilon = 0.0);

}  // namespace ccpsem

#endif
