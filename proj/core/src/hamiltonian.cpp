#include "qpe/hamiltonian.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "qpe/errors.hpp"

namespace qpe {

namespace {

bool parse_real(const std::string& token, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return errno == 0 && end == token.c_str() + token.size() && !token.empty();
}

}  // namespace

LCUHamiltonian parse_lcu(std::istream& text) {
  // Map keeps term order deterministic (lexicographic in the Pauli word).
  std::map<PauliString, double> merged;
  int n_qubits = 0;
  long line_no = 0;
  std::string line;
  while (std::getline(text, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_tok, word_tok, extra;
    if (!(fields >> coeff_tok)) continue;  // blank / comment-only line
    if (!(fields >> word_tok)) throw ParseError("expected `<coefficient> <pauli-string>`", line_no);
    if (fields >> extra) throw ParseError("trailing token '" + extra + "'", line_no);

    double coeff = 0.0;
    if (!parse_real(coeff_tok, coeff))
      throw ParseError("non-numeric coefficient '" + coeff_tok + "'", line_no);
    if (!std::isfinite(coeff)) throw ParseError("non-finite coefficient", line_no);

    PauliString word;
    try {
      word = PauliString::parse(word_tok);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (n_qubits == 0) {
      n_qubits = static_cast<int>(word.size());
    } else if (static_cast<int>(word.size()) != n_qubits) {
      throw ParseError("Pauli string length " + std::to_string(word.size()) +
                           " differs from earlier terms on " + std::to_string(n_qubits) + " qubits",
                       line_no);
    }
    merged[word] += coeff;
  }

  LCUHamiltonian h;
  h.n_qubits = n_qubits;
  for (const auto& [word, coeff] : merged) {
    if (coeff == 0.0) continue;  // exact cancellation after merging
    h.terms.push_back({coeff, word});
  }
  if (h.terms.empty())
    throw ValidationError("empty Hamiltonian: no term with a non-zero coefficient");
  return h;
}

LCUHamiltonian parse_lcu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_lcu(in);
}

LCUHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open Hamiltonian file: " + path);
  return parse_lcu(in);
}

CMatrix dense_matrix(const LCUHamiltonian& h) {
  if (h.n_qubits > kMaxSystemQubits)
    throw CapacityError("dense matrix for " + std::to_string(h.n_qubits) + " qubits exceeds the " +
                        std::to_string(kMaxSystemQubits) + "-qubit cap");
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  CMatrix m(dim, dim);
  for (const auto& term : h.terms) {
    for (std::size_t col = 0; col < dim; ++col) {
      const auto act = term.string.apply_to_basis(col);
      m(act.row, col) += term.coefficient * act.phase;
    }
  }
  return m;
}

double one_norm(const LCUHamiltonian& h) {
  double sum = 0.0;
  for (const auto& term : h.terms) sum += std::abs(term.coefficient);
  return sum;
}

double commutator_constant_c1(const LCUHamiltonian& h) {
  double c1 = 0.0;
  for (std::size_t s = 0; s < h.terms.size(); ++s) {
    for (std::size_t r = s + 1; r < h.terms.size(); ++r) {
      if (h.terms[r].string.anticommutes_with(h.terms[s].string))
        c1 += std::abs(h.terms[r].coefficient * h.terms[s].coefficient);
      // 1/2 * |gamma_r gamma_s| * 2 for anticommuting pairs, 0 otherwise
    }
  }
  return c1;
}

IdentitySplit split_identity(const LCUHamiltonian& h) {
  IdentitySplit out;
  out.remainder.n_qubits = h.n_qubits;
  for (const auto& term : h.terms) {
    if (term.string.is_identity())
      out.shift += term.coefficient;
    else
      out.remainder.terms.push_back(term);
  }
  if (out.remainder.terms.empty())
    throw ValidationError("Hamiltonian has only an identity term; nothing left to evolve");
  return out;
}

}  // namespace qpe
