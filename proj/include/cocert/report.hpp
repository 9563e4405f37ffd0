#pragma once

#include <string>

namespace cocert {

struct PhaseTimes {
    double parse_ms = 0;
    double refine_ms = 0;
    double certify_ms = 0;
    double verify_ms = 0;
};

struct RunReport {
    std::string functor;
    std::string mode;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t iterations = 0;
    std::size_t blocks = 0;
    std::size_t dag_nodes = 0;
    std::size_t dag_edges = 0;
    std::size_t dag_height = 0;
    std::size_t split_events = 0;
    std::size_t visited_edges = 0;
    bool verified = false;
    PhaseTimes time;
};

std::string to_text(const RunReport& r);
// Stable keys: functor, mode, n, m, iterations, blocks, dag{nodes,edges,height},
// split_events, visited_edges, verified, time_ms{parse,refine,certify,verify}.
std::string to_json(const RunReport& r);

}  // namespace cocert
