#pragma once
#include <vector>

#include "qdt/rational.hpp"

namespace qdt {

/**
 * Table-driven arithmetic for GF(p^k). Elements are ints in [0, p^k) encoding
 * polynomials over F_p by base-p digits (constant digit first). The modulus is
 * the first irreducible monic polynomial of degree k in that encoding order,
 * so element encodings are deterministic across runs.
 */
class Fq {
public:
    explicit Fq(long p, int k = 1);

    long characteristic() const { return p_; }
    int degree() const { return k_; }
    int size() const { return n_; }

    int add(int a, int b) const { return addTab_[static_cast<size_t>(a) * n_ + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const { return mulTab_[static_cast<size_t>(a) * n_ + b]; }
    int neg(int a) const { return negTab_[static_cast<size_t>(a)]; }
    /** Multiplicative inverse; throws on 0. */
    int inv(int a) const;
    int pow(int a, long e) const;
    /** Image of an integer under Z -> F_p -> F_(p^k). */
    int fromInteger(long x) const;

private:
    long p_;
    int k_;
    int n_;
    std::vector<int> addTab_, mulTab_, negTab_, invTab_;
};

/** Dense matrix over a small finite field; entries are Fq element codes. */
struct FqMat {
    int rows = 0, cols = 0;
    std::vector<int> a;

    FqMat() = default;
    FqMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    bool operator==(const FqMat& o) const = default;

    static FqMat identity(int n);
    bool isZero() const;
};

FqMat matMul(const Fq& F, const FqMat& A, const FqMat& B);
FqMat matAdd(const Fq& F, const FqMat& A, const FqMat& B);
FqMat matSub(const Fq& F, const FqMat& A, const FqMat& B);

/** Row echelon rank; A is taken by value and destroyed. */
int matRank(const Fq& F, FqMat A);

/** Basis of the right kernel {v : Av = 0}, each vector of length A.cols. */
std::vector<std::vector<int>> nullspaceBasis(const Fq& F, FqMat A);

/** Inverse of a square matrix; returns false when singular. */
bool matInverse(const Fq& F, const FqMat& A, FqMat& out);

/**
 * Row space of A in reduced row echelon form with zero rows dropped; canonical
 * per subspace, so equality of row spaces is equality of results.
 */
FqMat rowSpaceRref(const Fq& F, FqMat A);

} // namespace qdt
