#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cqec {

/// Phase-free n-qubit Pauli operator in binary symplectic form.
///
/// Qubit 0 is the leftmost character of the text form ("XII" acts with X on
/// qubit 0), and occupies the most significant bit of the packed masks, so
/// that interpreting a mask as an integer orders strings lexicographically
/// with I < {X,Z}. Global phases are not tracked; every operator is its own
/// inverse and multiplication is commutative.
struct PauliString {
  int n = 0;
  std::uint32_t x = 0;  // X-part bit mask
  std::uint32_t z = 0;  // Z-part bit mask

  bool x_bit(int qubit) const { return (x >> (n - 1 - qubit)) & 1u; }
  bool z_bit(int qubit) const { return (z >> (n - 1 - qubit)) & 1u; }

  bool is_identity() const { return x == 0 && z == 0; }
  int weight() const;

  /// Packed (x, z) key; orders nodes lexicographically over (x_bits, z_bits).
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(x) << 32) | z;
  }

  bool operator==(const PauliString&) const = default;
};

PauliString identity_pauli(int n);

/// Phase-free product: componentwise XOR of X-parts and Z-parts.
/// Throws std::invalid_argument on length mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff the symplectic inner product sum(a.x & b.z) + sum(a.z & b.x)
/// is even. Throws std::invalid_argument on length mismatch.
bool commutes(const PauliString& a, const PauliString& b);

/// Syndrome bits of `error` against a mutually commuting generator set:
/// bit k = 1 iff the error anticommutes with generator k (outcome -1).
/// Throws ConstructionError if the generators do not mutually commute.
std::vector<int> syndrome(const PauliString& error,
                          const std::vector<PauliString>& generators);

/// Syndrome bits packed as an integer, bit k from generator k.
int syndrome_index(const PauliString& error,
                   const std::vector<PauliString>& generators);

/// Parses strings over {I, X, Y, Z}, most significant qubit first ("ZZI").
/// Throws std::invalid_argument on other characters or empty input.
PauliString parse_pauli(std::string_view text);

std::string to_string(const PauliString& p);

}  // namespace cqec
