/// \file generators.hpp
/// Deterministic random instance generators. Every function draws from
/// the caller's engine only, so equal seeds give identical instances.
#pragma once

#include <cstdint>
#include <random>

#include "cdplan/model.hpp"

namespace cdplan::gen {

/// Uniform random recursive tree: parent of i drawn from 0..i-1.
RootedTree random_tree(int n, std::mt19937& rng);
/// Parent of i drawn from the last `max_children`-eligible vertices so no
/// vertex exceeds the given child count.
RootedTree random_tree_bounded(int n, int max_children, std::mt19937& rng);
RootedTree star_tree(int n);
RootedTree path_tree(int n);

StreamSystem random_stream_system(int n, int m, int a_max, int b_max,
                                  std::mt19937& rng);

ReorderInstance random_reorder(int n, Aggregation agg, std::mt19937& rng);

/// Random sizes and efforts; when with_target is set the target is the
/// TPT of a random permutation, hence always achievable.
TptInstance random_tpt(int n, std::int64_t sz_max, std::int64_t p_max,
                       bool with_target, std::mt19937& rng);

/// Random simple directed edges (no self-loops; parallel edges allowed).
Digraph random_digraph(int n, int m, std::mt19937& rng);
void add_rc(Digraph& g, std::int64_t rc_max, std::mt19937& rng);
/// Integer-valued durations in 0..t_max (stored as doubles).
void add_durations(Digraph& g, int t_max, std::mt19937& rng);
void add_caps(Digraph& g, int cap_max, std::mt19937& rng);
/// Non-increasing step profiles with up to `steps` plateaus; steps == 1
/// yields constant profiles.
void add_profiles(Digraph& g, int cap_max, int steps, std::mt19937& rng);

ResourceCatalog random_catalog(int types, std::int64_t cap_max, int n,
                               double charge_prob, bool with_tcharge,
                               std::mt19937& rng);

/// Random unrooted tree with bounded degree; every degree-1 vertex gets a
/// required frequency; cost model chosen by `matrix`.
FreqInstance random_freq(int n, int k, bool matrix, int max_degree,
                         std::mt19937& rng);

}  // namespace cdplan::gen
