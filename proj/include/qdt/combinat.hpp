#pragma once
#include <vector>

#include "qdt/rational.hpp"

namespace qdt {

/** Partition with parts in weakly decreasing order; empty = partition of 0. */
using Partition = std::vector<int>;

/** All partitions of n, deterministic order. */
std::vector<Partition> partitionsOf(int n);

/** Number of partitions of n. */
long numPartitions(int n);

Partition conjugate(const Partition& lam);

/** <lam, mu> = sum_k lam'_k mu'_k = sum_{i,j} min(lam_i, mu_j). */
long partitionPairing(const Partition& lam, const Partition& mu);

/** Multiplicity vector: m[k] = number of parts equal to k+1. */
std::vector<int> partMultiplicities(const Partition& lam);

/** Moebius function; n >= 1. */
int mobius(int n);

/** Divisors of n >= 1, increasing. */
std::vector<int> divisorsOf(int n);

/** First n primes. */
std::vector<long> firstPrimes(int n);

} // namespace qdt
