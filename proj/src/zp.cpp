#include "zpwalk/zp.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "zpwalk/error.hpp"

namespace zpwalk {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldModulus::FieldModulus(std::uint64_t p) : p_(p), prime_(is_prime(p)) {
    if (p < 2) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 2, got " + std::to_string(p));
}

FieldModulus FieldModulus::decision(std::uint64_t p) {
    FieldModulus m(p);
    if (!m.prime() || p < 3) {
        throw Error(ErrorCode::InvalidModulus, "decision layer needs a prime p >= 3, got " + std::to_string(p));
    }
    return m;
}

Residue FieldModulus::reduce(std::int64_t x) const noexcept {
    if (x >= 0) return static_cast<Residue>(x) % p_;
    const auto magnitude = static_cast<std::uint64_t>(-(x + 1)) + 1;
    const Residue r = magnitude % p_;
    return r == 0 ? 0 : p_ - r;
}

Residue mod_inverse(Residue a, const FieldModulus& p) {
    if (!p.prime()) throw Error(ErrorCode::InvalidModulus, "inverse needs a prime modulus");
    a %= p.value();
    if (a == 0) throw Error(ErrorCode::NoInverse, "0 has no inverse");
    // Fermat: a^(p-2).
    Residue result = 1;
    Residue base = a;
    std::uint64_t e = p.value() - 2;
    while (e > 0) {
        if (e & 1) result = p.mul(result, base);
        base = p.mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint64_t lifted_sum(std::span<const Residue> x) {
    std::uint64_t s = 0;
    for (Residue r : x) s += r;
    return s;
}

ZpMatrixSystem::ZpMatrixSystem(FieldModulus p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0), rhs_(rows, 0) {}

ZpMatrixSystem::ZpMatrixSystem(FieldModulus p, std::size_t rows, std::size_t cols,
                               std::vector<Residue> entries, std::vector<Residue> rhs)
    : p_(p), rows_(rows), cols_(cols), entries_(std::move(entries)), rhs_(std::move(rhs)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorCode::ShapeError, "matrix has " + std::to_string(entries_.size()) +
                                               " entries, expected " + std::to_string(rows_ * cols_));
    }
    if (rhs_.size() != rows_) {
        throw Error(ErrorCode::ShapeError,
                    "rhs has " + std::to_string(rhs_.size()) + " entries, expected " + std::to_string(rows_));
    }
    for (auto& e : entries_) e %= p_.value();
    for (auto& e : rhs_) e %= p_.value();
}

ResidueVector ZpMatrixSystem::multiply(std::span<const Residue> x) const {
    if (x.size() != cols_) throw Error(ErrorCode::ShapeError, "vector length does not match column count");
    ResidueVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Residue acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = p_.add(acc, p_.mul(at(r, c), x[c] % p_.value()));
        out[r] = acc;
    }
    return out;
}

bool ZpMatrixSystem::satisfied_by(std::span<const Residue> x) const {
    const auto ax = multiply(x);
    return std::equal(ax.begin(), ax.end(), rhs_.begin());
}

std::uint64_t SolutionSpace::count() const noexcept {
    std::uint64_t n = 1;
    const std::uint64_t p = modulus.value();
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
        n *= p;
    }
    return n;
}

SolutionSpace gaussian_solve(const ZpMatrixSystem& sys) {
    const FieldModulus& p = sys.modulus();
    if (!p.prime()) throw Error(ErrorCode::InvalidModulus, "elimination needs a prime modulus");

    const std::size_t rows = sys.rows();
    const std::size_t cols = sys.cols();
    const std::size_t width = cols + 1;
    std::vector<Residue> m(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m[r * width + c] = sys.at(r, c);
        m[r * width + cols] = sys.rhs(r);
    }
    auto cell = [&](std::size_t r, std::size_t c) -> Residue& { return m[r * width + c]; };

    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (cell(r, c) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        if (pivot != rank) {
            for (std::size_t k = 0; k < width; ++k) std::swap(cell(pivot, k), cell(rank, k));
        }
        const Residue inv = mod_inverse(cell(rank, c), p);
        for (std::size_t k = c; k < width; ++k) cell(rank, k) = p.mul(cell(rank, k), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || cell(r, c) == 0) continue;
            const Residue f = cell(r, c);
            for (std::size_t k = c; k < width; ++k) cell(r, k) = p.sub(cell(r, k), p.mul(f, cell(rank, k)));
        }
        pivot_cols.push_back(c);
        ++rank;
    }

    SolutionSpace space;
    space.modulus = p;
    space.rank = rank;
    space.augmented_rank = rank;
    for (std::size_t r = rank; r < rows; ++r) {
        if (cell(r, cols) != 0) {
            space.augmented_rank = rank + 1;
            break;
        }
    }
    space.solvable = space.augmented_rank == rank;
    if (!space.solvable) return space;

    space.particular.assign(cols, 0);
    for (std::size_t i = 0; i < rank; ++i) space.particular[pivot_cols[i]] = cell(i, cols);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        ResidueVector k(cols, 0);
        k[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) k[pivot_cols[i]] = p.neg(cell(i, f));
        space.kernel_basis.push_back(std::move(k));
        space.free_columns.push_back(f);
    }
    return space;
}

namespace {

void require_solvable(const SolutionSpace& space, const char* what) {
    if (!space.solvable) throw Error(ErrorCode::NormUndefined, std::string(what) + " of an unsolvable system");
}

void require_within_cap(const SolutionSpace& space, std::uint64_t cap) {
    const auto n = space.count();
    if (n > cap) {
        throw Error(ErrorCode::EnumerationTooLarge,
                    "solution set has " + std::to_string(space.modulus.value()) + "^" +
                        std::to_string(space.dimension()) + " elements, cap is " + std::to_string(cap),
                    n);
    }
}

// Calls visit(x) for every solution, odometer order over kernel coefficients.
template <class Visit>
void for_each_solution(const SolutionSpace& space, Visit&& visit) {
    const FieldModulus& p = space.modulus;
    const std::size_t dim = space.dimension();
    std::vector<Residue> coeff(dim, 0);
    ResidueVector x = space.particular;
    while (true) {
        visit(std::as_const(x));
        std::size_t i = 0;
        for (; i < dim; ++i) {
            const auto& k = space.kernel_basis[i];
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = p.add(x[j], k[j]);
            if (++coeff[i] < p.value()) break;
            coeff[i] = 0;  // wrapped: x is back to its value before this digit moved
        }
        if (i == dim) return;
    }
}

}  // namespace

std::vector<ResidueVector> enumerate_solutions(const SolutionSpace& space, std::uint64_t cap) {
    if (!space.solvable) throw Error(ErrorCode::Unsolvable, "cannot enumerate an unsolvable system");
    require_within_cap(space, cap);
    std::vector<ResidueVector> out;
    out.reserve(space.count());
    for_each_solution(space, [&](const ResidueVector& x) { out.push_back(x); });
    return out;
}

NormResult system_norm(const SolutionSpace& space, std::uint64_t cap) {
    require_solvable(space, "norm");
    require_within_cap(space, cap);
    NormResult best{std::numeric_limits<std::uint64_t>::max(), {}};
    for_each_solution(space, [&](const ResidueVector& x) {
        const auto s = lifted_sum(x);
        if (s < best.norm || (s == best.norm && x < best.witness)) best = {s, x};
    });
    return best;
}

std::vector<ResidueVector> minimum_norm_solutions(const SolutionSpace& space, std::uint64_t cap) {
    require_solvable(space, "norm");
    require_within_cap(space, cap);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<ResidueVector> out;
    for_each_solution(space, [&](const ResidueVector& x) {
        const auto s = lifted_sum(x);
        if (s < best) {
            best = s;
            out.clear();
        }
        if (s == best) out.push_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

NormResult greedy_norm(const SolutionSpace& space) {
    require_solvable(space, "norm");
    const FieldModulus& p = space.modulus;
    ResidueVector x = space.particular;
    std::uint64_t norm = lifted_sum(x);
    bool improved = true;
    while (improved) {
        improved = false;
        for (const auto& k : space.kernel_basis) {
            ResidueVector best_x;
            std::uint64_t best = norm;
            ResidueVector y = x;
            for (std::uint64_t c = 1; c < p.value(); ++c) {
                for (std::size_t j = 0; j < y.size(); ++j) y[j] = p.add(y[j], k[j]);
                const auto s = lifted_sum(y);
                if (s < best) {
                    best = s;
                    best_x = y;
                }
            }
            if (best < norm) {
                norm = best;
                x = std::move(best_x);
                improved = true;
            }
        }
    }
    return {norm, std::move(x)};
}

}  // namespace zpwalk
