#include "cqec/pauli.hpp"

#include <bit>
#include <stdexcept>

#include "cqec/errors.hpp"

namespace cqec {

namespace {

void require_same_length(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("Pauli length mismatch: " +
                                std::to_string(a.n) + " vs " +
                                std::to_string(b.n));
  }
}

}  // namespace

int PauliString::weight() const { return std::popcount(x | z); }

PauliString identity_pauli(int n) { return PauliString{n, 0, 0}; }

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  return PauliString{a.n, a.x ^ b.x, a.z ^ b.z};
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  int crossings = std::popcount(a.x & b.z) + std::popcount(a.z & b.x);
  return (crossings & 1) == 0;
}

std::vector<int> syndrome(const PauliString& error,
                          const std::vector<PauliString>& generators) {
  for (size_t i = 0; i < generators.size(); ++i) {
    for (size_t j = i + 1; j < generators.size(); ++j) {
      if (!commutes(generators[i], generators[j])) {
        throw ConstructionError("generators " + to_string(generators[i]) +
                                " and " + to_string(generators[j]) +
                                " do not commute");
      }
    }
  }
  std::vector<int> bits(generators.size());
  for (size_t k = 0; k < generators.size(); ++k) {
    bits[k] = commutes(error, generators[k]) ? 0 : 1;
  }
  return bits;
}

int syndrome_index(const PauliString& error,
                   const std::vector<PauliString>& generators) {
  int index = 0;
  for (size_t k = 0; k < generators.size(); ++k) {
    if (!commutes(error, generators[k])) index |= 1 << k;
  }
  return index;
}

PauliString parse_pauli(std::string_view text) {
  if (text.empty() || text.size() > 32) {
    throw std::invalid_argument("Pauli text must have 1..32 characters");
  }
  PauliString p;
  p.n = static_cast<int>(text.size());
  for (int q = 0; q < p.n; ++q) {
    std::uint32_t bit = 1u << (p.n - 1 - q);
    switch (text[q]) {
      case 'I':
        break;
      case 'X':
        p.x |= bit;
        break;
      case 'Z':
        p.z |= bit;
        break;
      case 'Y':
        p.x |= bit;
        p.z |= bit;
        break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli character '") +
                                    text[q] + "'");
    }
  }
  return p;
}

std::string to_string(const PauliString& p) {
  std::string out(p.n, 'I');
  for (int q = 0; q < p.n; ++q) {
    bool xb = p.x_bit(q);
    bool zb = p.z_bit(q);
    if (xb && zb) {
      out[q] = 'Y';
    } else if (xb) {
      out[q] = 'X';
    } else if (zb) {
      out[q] = 'Z';
    }
  }
  return out;
}

}  // namespace cqec
