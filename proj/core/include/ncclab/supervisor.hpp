#pragma once

#include <cstddef>
#include <vector>

#include "ncclab/coding.hpp"
#include "ncclab/correction.hpp"
#include "ncclab/flow.hpp"

namespace ncclab {

struct SupervisedScheme {
  SupervisedNetwork network;
  CodingScheme scheme;
  std::vector<double> expected_beta;  // E|beta_i| over uniform alpha, exact
  std::vector<double> beta_capacity;  // expected_beta rounded up to 1/1024
  unsigned r = 0;
};

// Builds R' and the combined scheme E'. `base` must decode every tuple of
// `codebook` correctly; r-bit messages, one block per pair.
SupervisedScheme build_supervised_scheme(const Network& base, const CodingScheme& base_scheme,
                                         const ExplicitCodebook& codebook);

struct SupervisorFlowAudit {
  double r = 0.0;                      // message bits
  double flow_rate = 0.0;              // rate of un(R')
  double u_capacity = 0.0;             // total capacity incident to u
  double u_capacity_bound = 0.0;       // (3/2) k r
  double beta_sum = 0.0;               // sum_i E|beta_i|
  double beta_sum_bound = 0.0;         // k r / 4
  bool beta_condition = false;         // beta_sum <= k r / 4
  bool capacity_claim = false;         // u_capacity <= (3/2) k r, checked when beta_condition
  std::vector<double> through_u;       // commodity i flow entering u
  double through_u_total = 0.0;
  double through_u_bound = 0.0;        // (3/4) k rate
  bool small_u_flow = false;           // through_u_total <= through_u_bound
  std::size_t good_pairs = 0;          // |A|: >= rate/10 units avoid u
  bool good_set_claim = false;         // small_u_flow implies |A| >= k/6
  double flow_residual = 0.0;
};

// Solves the flow LP on un(R') and recomputes the two supervisor claims with
// the measured rate in place of r.
SupervisorFlowAudit audit_supervisor_flow(const SupervisedScheme& sup, const FlowTolerances& tol = {});

}  // namespace ncclab
