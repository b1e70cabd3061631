#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace orbitlab {

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ModulusMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A verified odd prime p with 2 < p < 2^31. Scalars are canonical residues
/// in [0, p); products run through 64-bit intermediates, so every operation
/// is exact.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    std::uint32_t value() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t s = a + b;  // a,b < p < 2^31, no overflow
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    /// Fermat inverse; throws on zero.
    std::uint32_t inv(std::uint32_t a) const;

    friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ != b.p_; }

private:
    std::uint32_t p_;
};

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// A vector in F_p^d, coordinates stored as canonical residues.
class FpVector {
public:
    FpVector(PrimeModulus mod, std::vector<std::int64_t> coords);
    FpVector(PrimeModulus mod, std::initializer_list<std::int64_t> coords)
        : FpVector(mod, std::vector<std::int64_t>(coords)) {}
    static FpVector zero(PrimeModulus mod, int dim);

    PrimeModulus modulus() const noexcept { return mod_; }
    int dim() const noexcept { return static_cast<int>(c_.size()); }
    std::uint32_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<std::uint32_t>& coords() const noexcept { return c_; }

    bool is_zero() const noexcept;
    FpVector add(const FpVector& o) const;
    FpVector sub(const FpVector& o) const;
    FpVector negated() const;
    FpVector scaled(std::uint32_t s) const;
    std::uint32_t dot(const FpVector& o) const;

    friend bool operator==(const FpVector& a, const FpVector& b) noexcept {
        return a.mod_ == b.mod_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FpVector& a, const FpVector& b) noexcept { return !(a == b); }

private:
    friend class FpMatrix;
    FpVector(PrimeModulus mod, std::vector<std::uint32_t> reduced, int)
        : mod_(mod), c_(std::move(reduced)) {}

    PrimeModulus mod_;
    std::vector<std::uint32_t> c_;
};

std::ostream& operator<<(std::ostream& os, const FpVector& v);

/// A d x d matrix over F_p, row-major, with invertibility decided at
/// construction (determinant by Gaussian elimination).
class FpMatrix {
public:
    FpMatrix(PrimeModulus mod, int dim, std::vector<std::int64_t> row_major);
    static FpMatrix identity(PrimeModulus mod, int dim);

    PrimeModulus modulus() const noexcept { return mod_; }
    int dim() const noexcept { return dim_; }
    std::uint32_t at(int r, int c) const {
        return e_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(c)];
    }
    const std::vector<std::uint32_t>& entries() const noexcept { return e_; }
    bool invertible() const noexcept { return invertible_; }
    bool is_identity() const noexcept;

    FpMatrix mul(const FpMatrix& o) const;
    FpVector apply(const FpVector& v) const;           // M v
    FpVector apply_transposed(const FpVector& v) const;  // M^T v
    FpMatrix transposed() const;
    FpMatrix inverse() const;  // throws SingularMatrixError
    FpMatrix add(const FpMatrix& o) const;
    FpMatrix sub(const FpMatrix& o) const;

    friend bool operator==(const FpMatrix& a, const FpMatrix& b) noexcept {
        return a.mod_ == b.mod_ && a.dim_ == b.dim_ && a.e_ == b.e_;
    }
    friend bool operator!=(const FpMatrix& a, const FpMatrix& b) noexcept { return !(a == b); }

private:
    FpMatrix(PrimeModulus mod, int dim, std::vector<std::uint32_t> reduced, int);

    void check_same(const FpMatrix& o) const;
    std::uint32_t compute_det() const;

    PrimeModulus mod_;
    int dim_;
    std::vector<std::uint32_t> e_;
    bool invertible_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

}  // namespace orbitlab
