#include "qdt/combinat.hpp"

#include <algorithm>

#include "qdt/dimvec.hpp"

namespace qdt {

namespace {
void partitionsRec(int n, int maxPart, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxPart); p >= 1; --p) {
        cur.push_back(p);
        partitionsRec(n - p, p, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> partitionsOf(int n) {
    std::vector<Partition> out;
    Partition cur;
    partitionsRec(n, n, cur, out);
    return out;
}

long numPartitions(int n) { return static_cast<long>(partitionsOf(n).size()); }

Partition conjugate(const Partition& lam) {
    Partition out;
    if (lam.empty()) return out;
    out.resize(static_cast<size_t>(lam[0]), 0);
    for (int part : lam)
        for (int k = 0; k < part; ++k) ++out[static_cast<size_t>(k)];
    return out;
}

long partitionPairing(const Partition& lam, const Partition& mu) {
    long s = 0;
    for (int a : lam)
        for (int b : mu) s += std::min(a, b);
    return s;
}

std::vector<int> partMultiplicities(const Partition& lam) {
    std::vector<int> m;
    if (lam.empty()) return m;
    m.resize(static_cast<size_t>(lam[0]), 0);
    for (int part : lam) ++m[static_cast<size_t>(part - 1)];
    return m;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<int> divisorsOf(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::vector<long> firstPrimes(int n) {
    std::vector<long> out;
    for (long c = 2; static_cast<int>(out.size()) < n; ++c) {
        bool prime = true;
        for (long p : out) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(c);
    }
    return out;
}

namespace {
void dimVectorsRec(int n, int pos, int remaining, DimVector& cur, std::vector<DimVector>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        cur[static_cast<size_t>(pos)] = v;
        dimVectorsRec(n, pos + 1, remaining - v, cur, out);
    }
    cur[static_cast<size_t>(pos)] = 0;
}
} // namespace

std::vector<DimVector> dimVectorsUpTo(int n, int bound) {
    std::vector<DimVector> out;
    DimVector cur(static_cast<size_t>(n), 0);
    dimVectorsRec(n, 0, bound, cur, out);
    std::sort(out.begin(), out.end(), GradedLex{});
    out.erase(out.begin()); // drop gamma = 0
    return out;
}

} // namespace qdt
