#include "qpe/pauli.hpp"

#include <algorithm>

#include "qpe/errors.hpp"

namespace qpe {

char axis_to_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

PauliString PauliString::parse(std::string_view word) {
  if (word.empty()) throw ParseError("empty Pauli string");
  if (word.size() > static_cast<std::size_t>(kMaxSystemQubits))
    throw ParseError("Pauli string longer than " + std::to_string(kMaxSystemQubits) + " qubits");
  std::vector<PauliAxis> axes;
  axes.reserve(word.size());
  for (char c : word) {
    switch (c) {
      case 'I': axes.push_back(PauliAxis::I); break;
      case 'X': axes.push_back(PauliAxis::X); break;
      case 'Y': axes.push_back(PauliAxis::Y); break;
      case 'Z': axes.push_back(PauliAxis::Z); break;
      default:
        throw ParseError(std::string("invalid Pauli axis '") + c + "' (expected I, X, Y or Z)");
    }
  }
  return PauliString(std::move(axes));
}

bool PauliString::is_identity() const {
  return std::all_of(axes_.begin(), axes_.end(), [](PauliAxis a) { return a == PauliAxis::I; });
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(axes_.size());
  for (PauliAxis a : axes_) s.push_back(axis_to_char(a));
  return s;
}

bool PauliString::anticommutes_with(const PauliString& other) const {
  std::size_t clashes = 0;
  const std::size_t n = std::min(axes_.size(), other.axes_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const PauliAxis a = axes_[k];
    const PauliAxis b = other.axes_[k];
    if (a != PauliAxis::I && b != PauliAxis::I && a != b) ++clashes;
  }
  return (clashes % 2) == 1;
}

PauliString::BasisAction PauliString::apply_to_basis(std::size_t col) const {
  const std::size_t n = axes_.size();
  std::size_t row = 0;
  cplx phase{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t bit = (col >> (n - 1 - k)) & 1u;
    std::size_t out_bit = bit;
    switch (axes_[k]) {
      case PauliAxis::I:
        break;
      case PauliAxis::X:
        out_bit = 1u - bit;
        break;
      case PauliAxis::Y:
        // Y|0> = i|1>, Y|1> = -i|0>
        out_bit = 1u - bit;
        phase *= (bit == 0) ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
        break;
      case PauliAxis::Z:
        if (bit == 1) phase = -phase;
        break;
    }
    row |= out_bit << (n - 1 - k);
  }
  return {row, phase};
}

CMatrix PauliString::dense() const {
  const std::size_t dim = std::size_t{1} << axes_.size();
  CMatrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const BasisAction act = apply_to_basis(col);
    m(act.row, col) = act.phase;
  }
  return m;
}

}  // namespace qpe
