#include "hgpart/hgpart.h"

#include <string>
#include <vector>

#include "hgpart/error.hpp"
#include "hgpart/io.hpp"
#include "hgpart/pipeline.hpp"

struct hgp_hypergraph {
  hgpart::Hypergraph graph;
};

struct hgp_config {
  hgpart::RunConfig run;
};

struct hgp_result {
  std::vector<hgpart::BlockId> assignment;
  hgpart::BalanceSpec spec;
  hgpart::Weight cutsize = 0;
  std::vector<hgpart::Weight> block_weights;
  bool feasible = false;
  std::string metrics;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
hgp_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return HGP_OK;
  } catch (const hgpart::ParseError& e) {
    last_error = e.what();
    return HGP_ERR_PARSE;
  } catch (const hgpart::IoError& e) {
    last_error = e.what();
    return HGP_ERR_IO;
  } catch (const hgpart::InvalidArgument& e) {
    last_error = e.what();
    return HGP_ERR_INVALID_ARGUMENT;
  } catch (const hgpart::NumericalError& e) {
    last_error = e.what();
    return HGP_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HGP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HGP_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw hgpart::InvalidArgument(message);
}

std::vector<hgpart::BlockId> assignment_of(const hgp_hypergraph* h, const int32_t* assignment,
                                           size_t n) {
  require(assignment != nullptr || n == 0, "assignment is null");
  require(n == h->graph.num_vertices(), "assignment length does not match the hypergraph");
  return std::vector<hgpart::BlockId>(assignment, assignment + n);
}

hgp_status set_grid(hgp_config* config, const double* values, size_t count,
                    std::vector<double> hgpart::InitialOptions::*initial,
                    std::vector<double> hgpart::RefinementOptions::*refinement) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(values != nullptr && count > 0, "grid must not be empty");
    for (size_t i = 0; i < count; ++i) {
      require(values[i] >= 0.0 && values[i] <= 1.0, "grid values must lie in [0, 1]");
    }
    std::vector<double> grid(values, values + count);
    if (initial) config->run.initial.*initial = std::move(grid);
    else config->run.refinement.*refinement = std::move(grid);
  });
}

}  // namespace

extern "C" {

const char* hgp_last_error(void) { return last_error.c_str(); }

const char* hgp_status_name(hgp_status status) {
  switch (status) {
    case HGP_OK: return "ok";
    case HGP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HGP_ERR_PARSE: return "parse error";
    case HGP_ERR_IO: return "i/o error";
    case HGP_ERR_NUMERICAL: return "numerical error";
    case HGP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hgp_status hgp_hypergraph_read(const char* path, hgp_hypergraph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hgp_hypergraph{hgpart::read_hmetis(path)};
  });
}

hgp_status hgp_hypergraph_parse(const char* text, size_t length, hgp_hypergraph** out) {
  return guarded([&] {
    require((text != nullptr || length == 0) && out != nullptr, "null argument");
    *out = new hgp_hypergraph{hgpart::parse_hmetis(std::string_view(text, length))};
  });
}

hgp_status hgp_hypergraph_create(uint32_t num_vertices, uint32_t num_edges,
                                 const int64_t* vertex_weights, const int64_t* edge_weights,
                                 const uint64_t* edge_offsets, const uint32_t* pins,
                                 hgp_hypergraph** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(num_edges == 0 || (edge_offsets != nullptr && pins != nullptr), "edges need pins");
    std::vector<std::vector<hgpart::VertexId>> lists(num_edges);
    for (uint32_t e = 0; e < num_edges; ++e) {
      require(edge_offsets[e] <= edge_offsets[e + 1], "edge offsets must be nondecreasing");
      lists[e].assign(pins + edge_offsets[e], pins + edge_offsets[e + 1]);
    }
    std::vector<hgpart::Weight> vw(num_vertices, 1), ew(num_edges, 1);
    if (vertex_weights) vw.assign(vertex_weights, vertex_weights + num_vertices);
    if (edge_weights) ew.assign(edge_weights, edge_weights + num_edges);
    *out = new hgp_hypergraph{hgpart::Hypergraph(std::move(vw), std::move(ew), lists)};
  });
}

void hgp_hypergraph_destroy(hgp_hypergraph* h) { delete h; }

uint32_t hgp_hypergraph_num_vertices(const hgp_hypergraph* h) {
  return h ? h->graph.num_vertices() : 0;
}

uint32_t hgp_hypergraph_num_edges(const hgp_hypergraph* h) { return h ? h->graph.num_edges() : 0; }

int64_t hgp_hypergraph_total_vertex_weight(const hgp_hypergraph* h) {
  return h ? h->graph.total_vertex_weight() : 0;
}

hgp_status hgp_config_create(hgp_config** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new hgp_config{};
  });
}

void hgp_config_destroy(hgp_config* config) { delete config; }

hgp_status hgp_config_set_k(hgp_config* config, int32_t k) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(k >= 1, "k must be at least 1");
    config->run.k = k;
  });
}

hgp_status hgp_config_set_epsilon(hgp_config* config, double epsilon) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(epsilon >= 0.0, "epsilon must be nonnegative");
    config->run.epsilon = epsilon;
    config->run.ubfactor.reset();
  });
}

hgp_status hgp_config_set_ubfactor(hgp_config* config, double ubfactor) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(ubfactor > 0.0 && ubfactor < 50.0, "ubfactor must lie in (0, 50)");
    config->run.ubfactor = ubfactor;
    config->run.epsilon.reset();
  });
}

hgp_status hgp_config_set_num_init(hgp_config* config, int32_t num_init) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(num_init >= 1, "num_init must be positive");
    config->run.initial.num_init = num_init;
  });
}

hgp_status hgp_config_set_threads(hgp_config* config, int32_t threads) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(threads >= 0, "threads must be nonnegative");
    config->run.threads = threads;
  });
}

hgp_status hgp_config_set_deterministic(hgp_config* config, int deterministic) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    config->run.deterministic = deterministic != 0;
  });
}

hgp_status hgp_config_set_lambda1(hgp_config* config, const double* values, size_t count) {
  return set_grid(config, values, count, &hgpart::InitialOptions::lambda1, nullptr);
}

hgp_status hgp_config_set_lambda2(hgp_config* config, const double* values, size_t count) {
  return set_grid(config, values, count, &hgpart::InitialOptions::lambda2, nullptr);
}

hgp_status hgp_config_set_xi1(hgp_config* config, const double* values, size_t count) {
  return set_grid(config, values, count, nullptr, &hgpart::RefinementOptions::xi1);
}

hgp_status hgp_config_set_xi2(hgp_config* config, const double* values, size_t count) {
  return set_grid(config, values, count, nullptr, &hgpart::RefinementOptions::xi2);
}

hgp_status hgp_config_set_p_rules(hgp_config* config, const hgp_p_rule* rules, size_t count) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(rules != nullptr && count > 0, "need at least one p rule");
    std::vector<hgpart::PRule> out;
    for (size_t i = 0; i < count; ++i) {
      require(rules[i] == HGP_P_SQRT_HALF_N || rules[i] == HGP_P_N_OVER_5K, "unknown p rule");
      out.push_back(rules[i] == HGP_P_SQRT_HALF_N ? hgpart::PRule::kSqrtHalfN
                                                  : hgpart::PRule::kNOverFiveK);
    }
    config->run.initial.p_rules = std::move(out);
  });
}

hgp_status hgp_config_set_fixed_p(hgp_config* config, size_t p) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    if (p == 0) config->run.initial.fixed_p.reset();
    else config->run.initial.fixed_p = p;
  });
}

hgp_status hgp_config_set_tau(hgp_config* config, double tau) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(tau > -1.0 && tau < 1.0, "tau must lie in (-1, 1)");
    config->run.initial.tau = tau;
  });
}

hgp_status hgp_config_set_apg_max_iters(hgp_config* config, int32_t max_iters) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(max_iters >= 0, "max_iters must be nonnegative");
    config->run.initial.apg.max_iters = max_iters;
    config->run.refinement.apg.max_iters = max_iters;
  });
}

hgp_status hgp_config_set_apg_tolerance(hgp_config* config, double tolerance) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    require(tolerance > 0.0, "tolerance must be positive");
    config->run.initial.apg.tolerance = tolerance;
    config->run.refinement.apg.tolerance = tolerance;
  });
}

hgp_status hgp_partition(const hgp_hypergraph* h, const hgp_config* config, hgp_result** out) {
  return guarded([&] {
    require(h != nullptr && config != nullptr && out != nullptr, "null argument");
    hgpart::PartitionResult run = hgpart::run_partition(h->graph, config->run);
    auto* result = new hgp_result;
    result->metrics = hgpart::format_metrics(h->graph, run);
    result->assignment = std::move(run.assignment);
    result->spec = run.spec;
    result->cutsize = run.cutsize;
    result->block_weights = std::move(run.block_weights);
    result->feasible = run.feasible;
    *out = result;
  });
}

hgp_status hgp_improve(const hgp_hypergraph* h, const hgp_config* config,
                       const int32_t* assignment, size_t n, hgp_result** out) {
  return guarded([&] {
    require(h != nullptr && config != nullptr && out != nullptr, "null argument");
    const auto input = assignment_of(h, assignment, n);
    hgpart::ImproveReport report = hgpart::improve_partition(h->graph, input, config->run);
    const hgpart::BalanceSpec spec = hgpart::resolve_balance(h->graph, config->run);
    const hgpart::Evaluation eval = hgpart::evaluate_partition(h->graph, report.assignment, spec);
    auto* result = new hgp_result;
    result->metrics = hgpart::format_improvement(report) + hgpart::format_evaluation(eval);
    result->assignment = std::move(report.assignment);
    result->spec = spec;
    result->cutsize = eval.cutsize;
    result->block_weights = eval.block_weights;
    result->feasible = eval.feasible;
    *out = result;
  });
}

hgp_status hgp_evaluate(const hgp_hypergraph* h, const hgp_config* config,
                        const int32_t* assignment, size_t n, hgp_result** out) {
  return guarded([&] {
    require(h != nullptr && config != nullptr && out != nullptr, "null argument");
    auto input = assignment_of(h, assignment, n);
    const hgpart::BalanceSpec spec = hgpart::resolve_balance(h->graph, config->run);
    const hgpart::Evaluation eval = hgpart::evaluate_partition(h->graph, input, spec);
    auto* result = new hgp_result;
    result->metrics = hgpart::format_evaluation(eval);
    result->assignment = std::move(input);
    result->spec = spec;
    result->cutsize = eval.cutsize;
    result->block_weights = eval.block_weights;
    result->feasible = eval.feasible;
    *out = result;
  });
}

hgp_status hgp_read_partition(const char* path, const hgp_hypergraph* h, int32_t k, int32_t* out,
                              size_t n) {
  return guarded([&] {
    require(path != nullptr && h != nullptr && out != nullptr, "null argument");
    require(n == h->graph.num_vertices(), "buffer length does not match the hypergraph");
    const auto assignment = hgpart::read_partition(path, n, k);
    std::copy(assignment.begin(), assignment.end(), out);
  });
}

void hgp_result_destroy(hgp_result* result) { delete result; }

int64_t hgp_result_cutsize(const hgp_result* result) { return result ? result->cutsize : 0; }

int hgp_result_feasible(const hgp_result* result) { return result && result->feasible ? 1 : 0; }

int32_t hgp_result_k(const hgp_result* result) { return result ? result->spec.k : 0; }

size_t hgp_result_num_vertices(const hgp_result* result) {
  return result ? result->assignment.size() : 0;
}

const int32_t* hgp_result_assignment(const hgp_result* result) {
  return result ? result->assignment.data() : nullptr;
}

int64_t hgp_result_block_weight(const hgp_result* result, int32_t block) {
  if (!result || block < 0 || static_cast<size_t>(block) >= result->block_weights.size()) return -1;
  return result->block_weights[static_cast<size_t>(block)];
}

int64_t hgp_result_max_block_weight(const hgp_result* result) {
  return result ? result->spec.max_block_weight() : 0;
}

double hgp_result_epsilon(const hgp_result* result) { return result ? result->spec.epsilon : 0.0; }

const char* hgp_result_metrics(const hgp_result* result) {
  return result ? result->metrics.c_str() : "";
}

hgp_status hgp_result_write_partition(const hgp_result* result, const char* path) {
  return guarded([&] {
    require(result != nullptr && path != nullptr, "null argument");
    hgpart::write_text_file(path, hgpart::write_partition(result->assignment));
  });
}

}  // extern "C"
