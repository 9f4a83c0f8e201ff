#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prp/model.hpp"
#include "prp/schedule.hpp"

namespace prp {

// A ranking of all places used to index the admissible set.
struct PlaceOrder {
  std::string name;
  std::vector<PlaceId> order;
  std::vector<int> rank;  // rank[p - 1] = position of p in order
};

PlaceOrder make_place_order(std::string name, std::vector<PlaceId> order);
// close: ascending sum over stations of both legs (ties by id); far: close
// reversed; zigzag: close with its two halves interleaved; avg-cost:
// ascending c_avg.
PlaceOrder named_place_order(const Instance& inst, const std::string& name);

enum class Encoding { Genetic1, Genetic2 };
std::string to_string(Encoding e);

// Genes cover the decision steps only (fill steps are NoOp).
using Genes = std::vector<int>;

// Genetic 1: genes are place ids, the result may be infeasible.
ActionSequence decode1(const Genes& genes, const DepartureSchedule& schedule);
// Genetic 2: gene t picks element (gene mod |D_t|) of the admissible places
// sorted by gamma. Always feasible.
ActionSequence decode2(const Genes& genes, const Instance& inst, const DepartureSchedule& schedule,
                       const PlaceOrder& gamma);

// Total cost of y, or nullopt when some action is not admissible.
std::optional<double> evaluate(const Instance& inst, const DepartureSchedule& schedule, const ActionSequence& y);

struct GaConfig {
  int population = 100;
  double mutations_per_chromosome = 3.0;  // per-gene rate = this / length
  double crossover_probability = 0.5;
  int tournament = 3;
  int elitism = 1;
  int stall_generations = 100;
  int max_generations = 0;  // 0: stop on stall only
  std::uint64_t seed = 1;
};

struct GaResult {
  ActionSequence actions;
  double cost = 0.0;
  std::vector<double> history;  // best total cost after each generation
  int generations = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t infeasible = 0;

  double infeasible_fraction() const { return evaluated ? static_cast<double>(infeasible) / evaluated : 0.0; }
};

// Generational GA: tournament selection, two-point crossover, uniform gene
// mutation, elitism. The initial population consists of random-policy
// replays. gamma is required for Genetic2.
GaResult evolve(const Instance& inst, Encoding encoding, const PlaceOrder* gamma, const GaConfig& cfg);

}  // namespace prp
