#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpe/matrix.hpp"

namespace qpe {

/// Dense matrices of 2^n x 2^n cap what this toolkit will materialize.
inline constexpr int kMaxSystemQubits = 14;

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_to_char(PauliAxis axis);

/// A word over {I,X,Y,Z}; position k acts on qubit k, with qubit 0 the
/// most significant bit of a computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {}

  /// Parses e.g. "ZIII". Throws ParseError on a bad letter, an empty word,
  /// or a word longer than kMaxSystemQubits.
  static PauliString parse(std::string_view word);

  std::size_t size() const { return axes_.size(); }
  PauliAxis axis(std::size_t qubit) const { return axes_[qubit]; }
  const std::vector<PauliAxis>& axes() const { return axes_; }

  bool is_identity() const;
  std::string str() const;

  /// Symplectic test: two Pauli words anticommute iff they differ on an odd
  /// number of positions where both are non-identity.
  bool anticommutes_with(const PauliString& other) const;

  /// 2^n x 2^n matrix of the tensor product, qubit 0 as the high bit.
  CMatrix dense() const;

  /// Applies the word to basis index `col`: P|col> = phase * |row>.
  struct BasisAction {
    std::size_t row;
    cplx phase;
  };
  BasisAction apply_to_basis(std::size_t col) const;

  auto operator<=>(const PauliString&) const = default;

 private:
  std::vector<PauliAxis> axes_;
};

}  // namespace qpe
