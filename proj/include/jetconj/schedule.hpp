#pragma once
// Permutation schedule for the non-autonomous conjugacy.
//
// With D = 2^{d-1}, the "epoch" times are n = D^h - 1 for h = 0, 1, 2, ...
// At epoch h the schedule fires the h-th letter of the N-periodic extension
// of the nilpotency word (sigma_at), otherwise it is the identity:
//
//     theta_n = sigma_at(d, h)  if n = D^h - 1,   theta_n = id otherwise,
//
// and the accumulated twist is the left product of everything fired so far:
//
//     tau_0 = id,   tau_{n+1} = theta_n o tau_n.
//
// Left accumulation is forced by the conjugacy chain h_{n+1} o f_n = g_n o h_n:
// the twist applied after step n must multiply the previous twist from the
// left, and it also matches the interleaved composition used by the basin
// iteration.  (For d = 2 the group is abelian and the order is invisible.)

#include <vector>

#include "jetconj/poset.hpp"

namespace jetconj {

long long epoch_base(int d);  // D = 2^{d-1}

// If n = D^h - 1 for some h >= 0, returns h; otherwise -1.
int epoch_of(int d, long long n);

Permutation theta_at(int d, long long n);
Permutation tau_at(int d, long long n);

// All epoch times <= nmax, ascending.
std::vector<long long> epoch_times(int d, long long nmax);

}  // namespace jetconj
