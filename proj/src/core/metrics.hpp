#pragma once

#include <span>
#include <string>
#include <vector>

#include "optimizer.hpp"

namespace umo {

/**
 * One point of an approximation front: mean objective vector, optionally
 * with per-objective sample bounds for the robustness metric.
 */
struct FrontPoint {
  std::vector<double> f;
  std::vector<double> lo;
  std::vector<double> hi;

  bool has_bounds() const { return !lo.empty(); }
};

// a weakly below b everywhere and strictly below somewhere (minimization).
bool crisp_dominates(std::span<const double> a, std::span<const double> b);

// Non-dominated subset under crisp dominance on means, duplicates collapsed
// to their first occurrence, original order kept.
std::vector<FrontPoint> crisp_front(const std::vector<FrontPoint>& points);

// The crisp front of one recorded generation, bounds carried along.
std::vector<FrontPoint> snapshot_front(const Snapshot& snap);

std::vector<FrontPoint> build_reference_front(
    const std::vector<std::vector<FrontPoint>>& fronts);

/**
 * Smallest factor by which the approximation must be improved to weakly
 * dominate every reference point: max over r of min over a of max_i a_i/r_i.
 * Demands strictly positive objectives on both sides.
 */
double epsilon_multiplicative(const std::vector<FrontPoint>& approx,
                              const std::vector<FrontPoint>& reference);

// Shift variant of the same indicator, defined on all of objective space.
double epsilon_additive(const std::vector<FrontPoint>& approx,
                        const std::vector<FrontPoint>& reference);

/**
 * Grid diversity score in [0, 1]. Both fronts are quantized onto a
 * divisions^m grid spanning their common bounding box; the summed cell
 * distances from approximation cells to their nearest reference cell are
 * normalized by the farthest possible placement. 1 means every
 * approximation cell coincides with a reference cell.
 */
double dci(const std::vector<FrontPoint>& approx,
           const std::vector<FrontPoint>& reference, int divisions);

// Mean length of the per-solution worst-to-best objective diagonal.
double diagonal_distance(const std::vector<FrontPoint>& solutions);

// Lower median: the element at index floor((count-1)/2) of the sorted values.
double lower_median(std::vector<double> values);

// Index of the run whose value sits at the lower median of `final_eps`.
std::size_t median_run_index(std::span<const double> final_eps);

void write_front_csv(const std::string& path,
                     const std::vector<FrontPoint>& front);
std::vector<FrontPoint> read_front_csv(const std::string& path);

}  // namespace umo
