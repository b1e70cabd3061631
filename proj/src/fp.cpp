#include "orbitlab/fp.hpp"

#include <cstdlib>

#include "orbitlab/caps.hpp"

namespace orbitlab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) {
    if (p <= 2 || p >= (std::uint64_t{1} << 31))
        throw std::invalid_argument("PrimeModulus: need an odd prime with 2 < p < 2^31, got " +
                                    std::to_string(p));
    if (!is_prime_u64(p))
        throw std::invalid_argument("PrimeModulus: " + std::to_string(p) + " is not prime");
    p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeModulus::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeModulus::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("PrimeModulus::inv: zero has no inverse");
    return pow(a, p_ - 2);
}

FpVector::FpVector(PrimeModulus mod, std::vector<std::int64_t> coords) : mod_(mod) {
    c_.reserve(coords.size());
    for (std::int64_t x : coords) c_.push_back(mod.reduce(x));
}

FpVector FpVector::zero(PrimeModulus mod, int dim) {
    return FpVector(mod, std::vector<std::uint32_t>(static_cast<std::size_t>(dim), 0), 0);
}

bool FpVector::is_zero() const noexcept {
    for (std::uint32_t x : c_)
        if (x != 0) return false;
    return true;
}

namespace {
void check_vec_pair(const FpVector& a, const FpVector& b) {
    if (a.modulus() != b.modulus())
        throw ModulusMismatchError("FpVector: operand moduli differ");
    if (a.dim() != b.dim()) throw std::invalid_argument("FpVector: dimension mismatch");
}
}  // namespace

FpVector FpVector::add(const FpVector& o) const {
    check_vec_pair(*this, o);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_.add(c_[i], o.c_[i]);
    return FpVector(mod_, std::move(r), 0);
}

FpVector FpVector::sub(const FpVector& o) const {
    check_vec_pair(*this, o);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_.sub(c_[i], o.c_[i]);
    return FpVector(mod_, std::move(r), 0);
}

FpVector FpVector::negated() const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_.neg(c_[i]);
    return FpVector(mod_, std::move(r), 0);
}

FpVector FpVector::scaled(std::uint32_t s) const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_.mul(c_[i], s);
    return FpVector(mod_, std::move(r), 0);
}

std::uint32_t FpVector::dot(const FpVector& o) const {
    check_vec_pair(*this, o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        acc += static_cast<std::uint64_t>(c_[i]) * o.c_[i] % mod_.value();
    return static_cast<std::uint32_t>(acc % mod_.value());
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) {
    os << '(';
    for (int i = 0; i < v.dim(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os << ')';
}

FpMatrix::FpMatrix(PrimeModulus mod, int dim, std::vector<std::int64_t> row_major)
    : mod_(mod), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("FpMatrix: dimension must be >= 1");
    if (row_major.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
        throw std::invalid_argument("FpMatrix: entry count does not match dimension");
    e_.reserve(row_major.size());
    for (std::int64_t x : row_major) e_.push_back(mod.reduce(x));
    invertible_ = compute_det() != 0;
}

FpMatrix::FpMatrix(PrimeModulus mod, int dim, std::vector<std::uint32_t> reduced, int)
    : mod_(mod), dim_(dim), e_(std::move(reduced)) {
    invertible_ = compute_det() != 0;
}

FpMatrix FpMatrix::identity(PrimeModulus mod, int dim) {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0);
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = 1;
    return FpMatrix(mod, dim, std::move(e), 0);
}

bool FpMatrix::is_identity() const noexcept {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
}

void FpMatrix::check_same(const FpMatrix& o) const {
    if (mod_ != o.mod_) throw ModulusMismatchError("FpMatrix: operand moduli differ");
    if (dim_ != o.dim_) throw std::invalid_argument("FpMatrix: dimension mismatch");
}

std::uint32_t FpMatrix::compute_det() const {
    std::vector<std::uint32_t> a = e_;
    const int d = dim_;
    std::uint32_t det = 1;
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r) {
            if (a[static_cast<std::size_t>(r) * d + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int c = 0; c < d; ++c)
                std::swap(a[static_cast<std::size_t>(pivot) * d + c],
                          a[static_cast<std::size_t>(col) * d + c]);
            det = mod_.neg(det);
        }
        std::uint32_t pv = a[static_cast<std::size_t>(col) * d + col];
        det = mod_.mul(det, pv);
        std::uint32_t pinv = mod_.inv(pv);
        for (int r = col + 1; r < d; ++r) {
            std::uint32_t f = mod_.mul(a[static_cast<std::size_t>(r) * d + col], pinv);
            if (f == 0) continue;
            for (int c = col; c < d; ++c) {
                std::size_t ri = static_cast<std::size_t>(r) * d + c;
                a[ri] = mod_.sub(a[ri], mod_.mul(f, a[static_cast<std::size_t>(col) * d + c]));
            }
        }
    }
    return det;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
    check_same(o);
    const int d = dim_;
    std::vector<std::uint32_t> r(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            std::uint64_t aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < d; ++j) {
                std::size_t ri = static_cast<std::size_t>(i) * d + j;
                r[ri] = static_cast<std::uint32_t>(
                    (r[ri] + aik * o.at(k, j)) % mod_.value());
            }
        }
    }
    return FpMatrix(mod_, d, std::move(r), 0);
}

FpVector FpMatrix::apply(const FpVector& v) const {
    if (mod_ != v.modulus()) throw ModulusMismatchError("FpMatrix::apply: moduli differ");
    if (dim_ != v.dim()) throw std::invalid_argument("FpMatrix::apply: dimension mismatch");
    std::vector<std::uint32_t> r(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        std::uint64_t acc = 0;
        for (int j = 0; j < dim_; ++j)
            acc += static_cast<std::uint64_t>(at(i, j)) * v[j] % mod_.value();
        r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(acc % mod_.value());
    }
    return FpVector(mod_, std::move(r), 0);
}

FpVector FpMatrix::apply_transposed(const FpVector& v) const {
    if (mod_ != v.modulus()) throw ModulusMismatchError("FpMatrix::apply_transposed: moduli differ");
    if (dim_ != v.dim()) throw std::invalid_argument("FpMatrix::apply_transposed: dimension mismatch");
    std::vector<std::uint32_t> r(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        std::uint64_t acc = 0;
        for (int j = 0; j < dim_; ++j)
            acc += static_cast<std::uint64_t>(at(j, i)) * v[j] % mod_.value();
        r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(acc % mod_.value());
    }
    return FpVector(mod_, std::move(r), 0);
}

FpMatrix FpMatrix::transposed() const {
    std::vector<std::uint32_t> r(e_.size());
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r[static_cast<std::size_t>(j) * dim_ + i] = at(i, j);
    return FpMatrix(mod_, dim_, std::move(r), 0);
}

FpMatrix FpMatrix::inverse() const {
    if (!invertible_) throw SingularMatrixError("FpMatrix::inverse: singular matrix");
    const int d = dim_;
    std::vector<std::uint32_t> a = e_;
    std::vector<std::uint32_t> inv(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(i) * d + i] = 1;
    // Gauss-Jordan
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r) {
            if (a[static_cast<std::size_t>(r) * d + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot != col) {
            for (int c = 0; c < d; ++c) {
                std::swap(a[static_cast<std::size_t>(pivot) * d + c],
                          a[static_cast<std::size_t>(col) * d + c]);
                std::swap(inv[static_cast<std::size_t>(pivot) * d + c],
                          inv[static_cast<std::size_t>(col) * d + c]);
            }
        }
        std::uint32_t pinv = mod_.inv(a[static_cast<std::size_t>(col) * d + col]);
        for (int c = 0; c < d; ++c) {
            std::size_t ci = static_cast<std::size_t>(col) * d + c;
            a[ci] = mod_.mul(a[ci], pinv);
            inv[ci] = mod_.mul(inv[ci], pinv);
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            std::uint32_t f = a[static_cast<std::size_t>(r) * d + col];
            if (f == 0) continue;
            for (int c = 0; c < d; ++c) {
                std::size_t ri = static_cast<std::size_t>(r) * d + c;
                a[ri] = mod_.sub(a[ri], mod_.mul(f, a[static_cast<std::size_t>(col) * d + c]));
                inv[ri] = mod_.sub(inv[ri], mod_.mul(f, inv[static_cast<std::size_t>(col) * d + c]));
            }
        }
    }
    return FpMatrix(mod_, d, std::move(inv), 0);
}

FpMatrix FpMatrix::add(const FpMatrix& o) const {
    check_same(o);
    std::vector<std::uint32_t> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = mod_.add(e_[i], o.e_[i]);
    return FpMatrix(mod_, dim_, std::move(r), 0);
}

FpMatrix FpMatrix::sub(const FpMatrix& o) const {
    check_same(o);
    std::vector<std::uint32_t> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = mod_.sub(e_[i], o.e_[i]);
    return FpMatrix(mod_, dim_, std::move(r), 0);
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
    os << '[';
    for (int r = 0; r < m.dim(); ++r) {
        if (r) os << ';';
        for (int c = 0; c < m.dim(); ++c) {
            if (c) os << ',';
            os << m.at(r, c);
        }
    }
    return os << ']';
}

ResourceCaps ResourceCaps::from_env() {
    ResourceCaps caps;
    auto read = [](const char* name, std::uint64_t& out) {
        if (const char* s = std::getenv(name)) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) out = v;
        }
    };
    read("ORBITLAB_CAP_POINTS", caps.max_points);
    read("ORBITLAB_CAP_CLOSURE", caps.max_closure);
    read("ORBITLAB_CAP_AFFSET", caps.max_affine_set);
    read("ORBITLAB_CAP_PAIRS", caps.max_pairs);
    return caps;
}

}  // namespace orbitlab
