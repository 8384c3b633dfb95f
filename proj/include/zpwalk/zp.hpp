#ifndef ZPWALK_ZP_HPP
#define ZPWALK_ZP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zpwalk {

__extension__ using Wide = unsigned __int128;

/// Canonical residue in [0, p).
using Residue = std::uint64_t;
using ResidueVector = std::vector<Residue>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

bool is_prime(std::uint64_t n);

/// The modulus p of Z_p. Any p >= 2 is accepted; operations that need a
/// field (inverses, elimination) check primality themselves.
class FieldModulus {
public:
    explicit FieldModulus(std::uint64_t p);

    /// Modulus for the decision layer: p prime and p >= 3.
    static FieldModulus decision(std::uint64_t p);

    std::uint64_t value() const noexcept { return p_; }
    bool prime() const noexcept { return prime_; }

    Residue reduce(std::int64_t x) const noexcept;
    Residue add(Residue a, Residue b) const noexcept { return a >= p_ - b ? a - (p_ - b) : a + b; }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<Wide>(a) * b % p_);
    }
    Residue minus_one() const noexcept { return p_ - 1; }

    friend bool operator==(const FieldModulus& a, const FieldModulus& b) noexcept { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
    bool prime_;
};

Residue mod_inverse(Residue a, const FieldModulus& p);

/// Integer sum of residues lifted to [0, p).
std::uint64_t lifted_sum(std::span<const Residue> x);

/// Dense linear system A x = b over Z_p, row-major.
class ZpMatrixSystem {
public:
    ZpMatrixSystem(FieldModulus p, std::size_t rows, std::size_t cols);
    ZpMatrixSystem(FieldModulus p, std::size_t rows, std::size_t cols,
                   std::vector<Residue> entries, std::vector<Residue> rhs);

    const FieldModulus& modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue v) { entries_[r * cols_ + c] = v % p_.value(); }
    void add_to(std::size_t r, std::size_t c, Residue v) {
        auto& e = entries_[r * cols_ + c];
        e = p_.add(e, v % p_.value());
    }
    Residue rhs(std::size_t r) const { return rhs_[r]; }
    void set_rhs(std::size_t r, Residue v) { rhs_[r] = v % p_.value(); }
    std::span<const Residue> rhs() const noexcept { return rhs_; }

    ResidueVector multiply(std::span<const Residue> x) const;
    bool satisfied_by(std::span<const Residue> x) const;

private:
    FieldModulus p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> entries_;
    std::vector<Residue> rhs_;
};

/// Affine solution set particular + span(kernel_basis). The basis is read off
/// the reduced row-echelon form: one vector per free column, carrying 1 at
/// its free column and 0 at every other free column.
struct SolutionSpace {
    bool solvable = false;
    FieldModulus modulus{2};
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
    ResidueVector particular;
    std::vector<ResidueVector> kernel_basis;
    std::vector<std::size_t> free_columns;

    std::size_t dimension() const noexcept { return kernel_basis.size(); }
    /// p^dimension, saturated at UINT64_MAX.
    std::uint64_t count() const noexcept;
};

SolutionSpace gaussian_solve(const ZpMatrixSystem& sys);

std::vector<ResidueVector> enumerate_solutions(const SolutionSpace& space,
                                               std::uint64_t cap = kDefaultEnumerationCap);

struct NormResult {
    std::uint64_t norm = 0;
    ResidueVector witness;
};

/// Minimum lifted sum over all solutions; ties go to the lexicographically
/// smallest vector.
NormResult system_norm(const SolutionSpace& space, std::uint64_t cap = kDefaultEnumerationCap);

/// Every solution attaining the minimum lifted sum, lexicographically sorted.
std::vector<ResidueVector> minimum_norm_solutions(const SolutionSpace& space,
                                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Local search from the particular solution: repeatedly add the multiple of
/// a kernel vector that lowers the lifted sum most. No optimality guarantee.
NormResult greedy_norm(const SolutionSpace& space);

}  // namespace zpwalk

#endif  // ZPWALK_ZP_HPP
