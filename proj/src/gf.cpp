#include "qdt/gf.hpp"

#include <stdexcept>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

constexpr int kMaxTableField = 1024;

/** Digits of x base p, length k (constant coefficient first). */
std::vector<int> digits(int x, long p, int k) {
    std::vector<int> d(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        d[static_cast<size_t>(i)] = static_cast<int>(x % p);
        x = static_cast<int>(x / p);
    }
    return d;
}

/** Polynomial remainder of a mod b over F_p; b nonzero, leading coeff of b invertible. */
std::vector<int> polyMod(std::vector<int> a, const std::vector<int>& b, long p) {
    auto deg = [](const std::vector<int>& f) {
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            if (f[static_cast<size_t>(i)] != 0) return i;
        return -1;
    };
    long invLead = 1;
    int db = deg(b);
    {
        long lb = b[static_cast<size_t>(db)], t = 1;
        // Fermat inverse mod p.
        for (long e = p - 2; e > 0; e >>= 1) {
            if (e & 1) t = t * lb % p;
            lb = lb * lb % p;
        }
        invLead = t;
    }
    int da = deg(a);
    while (da >= db) {
        long f = a[static_cast<size_t>(da)] * invLead % p;
        for (int i = 0; i <= db; ++i) {
            long val = a[static_cast<size_t>(da - db + i)] - f * b[static_cast<size_t>(i)] % p;
            a[static_cast<size_t>(da - db + i)] = static_cast<int>(((val % p) + p) % p);
        }
        da = deg(a);
    }
    return a;
}

std::vector<int> polyMulModP(const std::vector<int>& a, const std::vector<int>& b, long p) {
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int>((c[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    }
    return c;
}

int polyDeg(const std::vector<int>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

bool isIrreducible(const std::vector<int>& f, long p, int k) {
    // Trial division by every monic polynomial of degree 1..k/2.
    for (int d = 1; 2 * d <= k; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long c = 0; c < count; ++c) {
            std::vector<int> g(static_cast<size_t>(d + 1), 0);
            long x = c;
            for (int i = 0; i < d; ++i) {
                g[static_cast<size_t>(i)] = static_cast<int>(x % p);
                x /= p;
            }
            g[static_cast<size_t>(d)] = 1;
            if (polyDeg(polyMod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

} // namespace

Fq::Fq(long p, int k) : p_(p), k_(k) {
    if (p < 2) throw std::invalid_argument("field characteristic must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("field characteristic must be a prime");
    if (k < 1) throw std::invalid_argument("field degree must be positive");
    long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= p;
        if (n > kMaxTableField) throw InfeasibleError("field too large for table arithmetic");
    }
    n_ = static_cast<int>(n);

    // Modulus: first monic irreducible of degree k in encoding order.
    std::vector<int> mod;
    if (k_ == 1) {
        mod = {0, 1};
    } else {
        for (int c = 0; c < n_; ++c) {
            std::vector<int> f = digits(c, p_, k_);
            f.push_back(1);
            if (isIrreducible(f, p_, k_)) {
                mod = f;
                break;
            }
        }
    }

    addTab_.resize(static_cast<size_t>(n_) * n_);
    mulTab_.resize(static_cast<size_t>(n_) * n_);
    negTab_.resize(static_cast<size_t>(n_));
    invTab_.assign(static_cast<size_t>(n_), -1);
    for (int x = 0; x < n_; ++x) {
        auto dx = digits(x, p_, k_);
        int negacc = 0;
        for (int i = k_ - 1; i >= 0; --i)
            negacc = negacc * static_cast<int>(p_) +
                     static_cast<int>((p_ - dx[static_cast<size_t>(i)]) % p_);
        negTab_[static_cast<size_t>(x)] = negacc;
        for (int y = 0; y < n_; ++y) {
            auto dy = digits(y, p_, k_);
            int s = 0;
            for (int i = k_ - 1; i >= 0; --i)
                s = s * static_cast<int>(p_) +
                    static_cast<int>((dx[static_cast<size_t>(i)] + dy[static_cast<size_t>(i)]) % p_);
            addTab_[static_cast<size_t>(x) * n_ + y] = s;
            auto prod = polyMod(polyMulModP(dx, dy, p_), mod, p_);
            prod.resize(static_cast<size_t>(k_), 0);
            int m = 0;
            for (int i = k_ - 1; i >= 0; --i)
                m = m * static_cast<int>(p_) + prod[static_cast<size_t>(i)];
            mulTab_[static_cast<size_t>(x) * n_ + y] = m;
        }
    }
    for (int x = 1; x < n_; ++x)
        for (int y = 1; y < n_; ++y)
            if (mul(x, y) == 1) {
                invTab_[static_cast<size_t>(x)] = y;
                break;
            }
}

int Fq::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    return invTab_[static_cast<size_t>(a)];
}

int Fq::pow(int a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    int acc = 1, base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int Fq::fromInteger(long x) const {
    long r = x % p_;
    if (r < 0) r += p_;
    return static_cast<int>(r);
}

FqMat FqMat::identity(int n) {
    FqMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool FqMat::isZero() const {
    for (int x : a)
        if (x != 0) return false;
    return true;
}

FqMat matMul(const Fq& F, const FqMat& A, const FqMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    FqMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

FqMat matAdd(const Fq& F, const FqMat& A, const FqMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    FqMat C(A.rows, A.cols);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

FqMat matSub(const Fq& F, const FqMat& A, const FqMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    FqMat C(A.rows, A.cols);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

namespace {
/** In-place reduced row echelon form; returns pivot column list. */
std::vector<int> rrefInPlace(const Fq& F, FqMat& A) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int pr = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(pr, j), A.at(r, j));
        int s = F.inv(A.at(r, c));
        for (int j = 0; j < A.cols; ++j) A.at(r, j) = F.mul(s, A.at(r, j));
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            int f = A.at(i, c);
            for (int j = 0; j < A.cols; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}
} // namespace

int matRank(const Fq& F, FqMat A) { return static_cast<int>(rrefInPlace(F, A).size()); }

std::vector<std::vector<int>> nullspaceBasis(const Fq& F, FqMat A) {
    int cols = A.cols;
    std::vector<int> pivots = rrefInPlace(F, A);
    std::vector<bool> isPivot(static_cast<size_t>(cols), false);
    for (int c : pivots) isPivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<int>> basis;
    for (int freeCol = 0; freeCol < cols; ++freeCol) {
        if (isPivot[static_cast<size_t>(freeCol)]) continue;
        std::vector<int> v(static_cast<size_t>(cols), 0);
        v[static_cast<size_t>(freeCol)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] =
                F.neg(A.at(static_cast<int>(r), freeCol));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool matInverse(const Fq& F, const FqMat& A, FqMat& out) {
    if (A.rows != A.cols) throw std::invalid_argument("matrix shape mismatch");
    int n = A.rows;
    FqMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = rrefInPlace(F, aug);
    if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[static_cast<size_t>(n - 1)] != n - 1))
        return false;
    out = FqMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return true;
}

FqMat rowSpaceRref(const Fq& F, FqMat A) {
    auto pivots = rrefInPlace(F, A);
    FqMat out(static_cast<int>(pivots.size()), A.cols);
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < A.cols; ++j) out.at(i, j) = A.at(i, j);
    return out;
}

} // namespace qdt
