#include "cocert/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace cocert {

namespace {

std::string ms(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string to_text(const RunReport& r) {
    std::string out;
    out += "functor:       " + r.functor + "\n";
    out += "mode:          " + r.mode + "\n";
    out += "states:        " + std::to_string(r.n) + "\n";
    out += "edges:         " + std::to_string(r.m) + "\n";
    out += "iterations:    " + std::to_string(r.iterations) + "\n";
    out += "blocks:        " + std::to_string(r.blocks) + "\n";
    out += "dag nodes:     " + std::to_string(r.dag_nodes) + "\n";
    out += "dag edges:     " + std::to_string(r.dag_edges) + "\n";
    out += "dag height:    " + std::to_string(r.dag_height) + "\n";
    out += "split events:  " + std::to_string(r.split_events) + "\n";
    out += "visited edges: " + std::to_string(r.visited_edges) + "\n";
    out += std::string("verified:      ") + (r.verified ? "yes" : "no") + "\n";
    out += "time (ms):     parse " + ms(r.time.parse_ms) + ", refine " + ms(r.time.refine_ms) + ", certify " +
           ms(r.time.certify_ms) + ", verify " + ms(r.time.verify_ms) + "\n";
    return out;
}

std::string to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["functor"] = r.functor;
    j["mode"] = r.mode;
    j["n"] = r.n;
    j["m"] = r.m;
    j["iterations"] = r.iterations;
    j["blocks"] = r.blocks;
    j["dag"] = {{"nodes", r.dag_nodes}, {"edges", r.dag_edges}, {"height", r.dag_height}};
    j["split_events"] = r.split_events;
    j["visited_edges"] = r.visited_edges;
    j["verified"] = r.verified;
    j["time_ms"] = {{"parse", r.time.parse_ms},
                    {"refine", r.time.refine_ms},
                    {"certify", r.time.certify_ms},
                    {"verify", r.time.verify_ms}};
    return j.dump(2) + "\n";
}

}  // namespace cocert
