#pragma once

#include <Eigen/Core>

#include "npi/schema.hpp"
#include "npi/sort_env.hpp"

namespace npi {

// Deterministic scripted agents. Each is a pure function of the environment
// observation (the function-call agents additionally read the function id
// and previous action, both of which are part of their observation vector).

Instruction bubble_teacher(const Eigen::VectorXd& obs);       // 68-dim interface view
Instruction insertion_teacher(const Eigen::VectorXd& obs);    // 68-dim interface view
Instruction quicksort_teacher(const Eigen::VectorXd& obs);    // 129-dim function view
Instruction binary_search_teacher(const Eigen::VectorXd& obs);  // 115-dim search view
Instruction linear_search_teacher(const Eigen::VectorXd& obs);  // 115-dim search view
Instruction dfs_knapsack_teacher(const Eigen::VectorXd& obs);   // 14-dim knapsack view

// Selection-style full-view teacher: swaps the smallest misplaced value into
// its slot, reading only the pairwise comparison graph.
Instruction selection_teacher(const SortGraphObservation& graph);

}  // namespace npi
