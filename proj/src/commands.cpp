#include "cocert/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cocert/certdag.hpp"
#include "cocert/logic_eval.hpp"
#include "cocert/oracle.hpp"
#include "cocert/refiner.hpp"
#include "cocert/report.hpp"
#include "cocert/translate.hpp"

namespace cocert {

namespace {

constexpr std::size_t kExpandLimit = 4000;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Options {
    std::string file;
    std::string mode = "generic";
    std::string logic;
    std::string out_path;
    bool verify = false;
    bool json = false;
    bool naive_split = false;
    bool no_timing = false;
};

struct Loaded {
    Coalgebra original;
    Desugared d;
    double parse_ms = 0;

    const Coalgebra& work() const { return d.coalgebra; }
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Loaded load(const std::string& path) {
    auto t0 = Clock::now();
    Loaded l;
    l.original = parse_coalgebra(read_input(path));
    l.d = desugar_composite(l.original);
    l.parse_ms = since(t0);
    return l;
}

struct Run {
    PartitionResult result;
    CertificateSet certs;
    RunReport report;
};

Run run_pipeline(const Loaded& l, const Options& o) {
    const Coalgebra& c = l.work();
    Run r;
    RefineMode mode = parse_mode(o.mode);
    auto t0 = Clock::now();
    r.result = refine(c, mode);
    r.report.time.refine_ms = since(t0);
    if (o.naive_split && mode != RefineMode::Naive) {
        auto naive = refine(c, RefineMode::Naive);
        if (normalize_blocks(naive.partition.assignment()) != normalize_blocks(r.result.partition.assignment()))
            throw VerificationError("naive refinement disagrees with " + o.mode + " refinement");
    }
    t0 = Clock::now();
    r.certs = certify(c, r.result.trace);
    r.report.time.certify_ms = since(t0);
    if (o.verify) {
        t0 = Clock::now();
        auto check = check_certificates(r.certs, c);
        if (!check.ok())
            throw VerificationError("certificate of block " + std::to_string(check.mismatches[0].block) +
                                    " has the wrong extension");
        r.report.verified = true;
        r.report.time.verify_ms = since(t0);
    }
    auto& rep = r.report;
    rep.functor = to_string(l.original.functor);
    rep.mode = to_string(mode);
    rep.n = l.original.n();
    rep.m = l.original.m;
    rep.iterations = r.result.stats.iterations;
    std::vector<bool> has_original(r.certs.block_count(), false);
    for (StateId s = 0; s < l.d.original_count; ++s) has_original[r.certs.block_of[s]] = true;
    rep.blocks = static_cast<std::size_t>(std::count(has_original.begin(), has_original.end(), true));
    auto size = dag_size(r.certs.dag);
    rep.dag_nodes = size.nodes;
    rep.dag_edges = size.edges;
    rep.dag_height = size.height;
    rep.split_events = r.certs.counters.split_events;
    rep.visited_edges = r.result.stats.visited_edges;
    rep.time.parse_ms = l.parse_ms;
    if (o.no_timing) rep.time = {};
    return r;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.out_path + "'");
    f << text;
}

std::string show_formula(const FormulaDag& dag, EdgeRef e, const FunctorExpr& f) {
    if (tree_size(dag, e) <= kExpandLimit) return format_expanded(dag, e, f, kExpandLimit);
    return format_ref(e) + "\nwhere\n" + format_listing(dag, {e}, f);
}

std::optional<DomainLogic> chosen_logic(const Options& o, const FunctorExpr& f) {
    if (!o.logic.empty()) return make_logic(parse_logic_kind(o.logic), f);
    return std::nullopt;
}

int cmd_certify(const Options& o, std::ostream& out) {
    auto l = load(o.file);
    auto r = run_pipeline(l, o);
    std::string text = format_certificates(r.certs, l.work(), &l.d.original);
    if (auto L = chosen_logic(o, l.work().functor)) {
        auto ds = translate(r.certs, *L);
        text += "translated (" + to_string(L->kind) + "):\n";
        for (BlockId b = 0; b < r.certs.block_count(); ++b) {
            if (o.verify) {
                Extension want(l.work().n());
                for (StateId s = 0; s < l.work().n(); ++s)
                    if (r.certs.block_of[s] == b) want.set(s);
                if (eval_ds(ds.delta[b], ds.dag, l.work(), *L) != want)
                    throw VerificationError("translated certificate of block " + std::to_string(b) + " is wrong");
            }
            text += "block " + std::to_string(b) + " := ";
            text += ds_tree_size(ds.delta[b], ds.dag) <= kExpandLimit ? format_ds(ds.delta[b], ds.dag, *L)
                                                                     : std::string("(too large to expand)");
            text += "\n";
        }
    }
    emit(text, o, out);
    if (o.json) out << to_json(r.report);
    return kExitOk;
}

int cmd_distinguish(const Options& o, const std::string& xs, const std::string& ys, std::ostream& out) {
    auto l = load(o.file);
    StateId x = l.original.state(xs), y = l.original.state(ys);
    auto r = run_pipeline(l, o);
    auto phi = distinguish(x, y, r.certs, l.work());
    if (!phi) {
        out << "equivalent\n";
        return kExitOk;
    }
    if (auto L = chosen_logic(o, l.work().functor)) {
        DSDag dag;
        Translator tr(r.certs.dag, *L, dag);
        DSEdge e = tr.translate(*phi);
        Extension ext = eval_ds(e, dag, l.work(), *L);
        if (!ext.test(x) || ext.test(y)) throw VerificationError("translated formula does not separate the states");
        out << format_ds(e, dag, *L, 1U << 20) << "\n";
        return kExitOk;
    }
    out << show_formula(r.certs.dag, *phi, l.work().functor) << "\n";
    return kExitOk;
}

int cmd_minimize(const Options& o, std::ostream& out) {
    auto l = load(o.file);
    auto r = run_pipeline(l, o);
    std::vector<std::uint32_t> blocks(r.certs.block_of.begin(), r.certs.block_of.begin() + l.d.original_count);
    emit(write_model(quotient(l.original, normalize_blocks(blocks))), o, out);
    return kExitOk;
}

int cmd_check(const Options& o, const std::string& formula, std::ostream& out) {
    auto l = load(o.file);
    const Coalgebra& c = l.work();
    Extension ext;
    if (!o.logic.empty()) {
        auto L = make_logic(parse_logic_kind(o.logic), c.functor);
        DSDag dag;
        ext = eval_ds(parse_ds(formula, dag, L), dag, c, L);
    } else {
        FormulaDag dag;
        try {
            ext = eval(parse_formula(formula, dag, c.functor), dag, c);
        } catch (const InputError&) {
            auto L = natural_logic(c.functor);
            if (!L) throw;
            DSDag ds;
            ext = eval_ds(parse_ds(formula, ds, *L), ds, c, *L);
        }
    }
    std::vector<std::string> names;
    for (StateId s = 0; s < l.d.original_count; ++s)
        if (ext.test(s)) names.push_back(l.original.names[s]);
    std::sort(names.begin(), names.end());
    for (const auto& n : names) out << n << "\n";
    return kExitOk;
}

int cmd_translate(const Options& o, std::ostream& out) {
    auto l = load(o.file);
    const Coalgebra& c = l.work();
    std::optional<DomainLogic> L = chosen_logic(o, c.functor);
    if (!L) L = natural_logic(c.functor);
    if (!L) throw IncompatibleError("no domain-specific logic for functor " + to_string(c.functor));
    Options inner = o;
    inner.verify = false;
    auto r = run_pipeline(l, inner);
    auto ds = translate(r.certs, *L);
    std::string text = "logic: " + to_string(L->kind) + "\n";
    for (BlockId b = 0; b < r.certs.block_count(); ++b) {
        std::vector<StateId> members;
        Extension want(c.n());
        for (StateId s = 0; s < c.n(); ++s)
            if (r.certs.block_of[s] == b) {
                members.push_back(s);
                want.set(s);
            }
        if (o.verify && eval_ds(ds.delta[b], ds.dag, c, *L) != want)
            throw VerificationError("translated certificate of block " + std::to_string(b) + " is wrong");
        text += "block " + std::to_string(b) + " {";
        for (std::size_t i = 0; i < members.size(); ++i) text += (i ? ", " : "") + c.names[members[i]];
        text += "} := ";
        text += ds_tree_size(ds.delta[b], ds.dag) <= kExpandLimit ? format_ds(ds.delta[b], ds.dag, *L)
                                                                 : std::string("(too large to expand)");
        text += "\n";
    }
    emit(text, o, out);
    return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
    auto l = load(o.file);
    auto r = run_pipeline(l, o);
    out << (o.json ? to_json(r.report) : to_text(r.report));
    return kExitOk;
}

struct GenOptions {
    std::string functor;
    GeneratorSpec spec;
};

int cmd_gen(const GenOptions& g, const Options& o, std::ostream& out) {
    GeneratorSpec spec = g.spec;
    spec.functor = parse_functor(g.functor);
    emit(write_model(generate(spec)), o, out);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Behavioural equivalence classes with certificate formulas"};
    app.require_subcommand(1);
    Options o;
    GenOptions g;
    std::string x, y, formula;

    auto common = [&](CLI::App* sub, bool with_mode) {
        sub->add_option("file", o.file, "model file ('-' for stdin)")->required();
        if (with_mode)
            sub->add_option("--mode", o.mode, "generic | cancellative | naive")
                ->check(CLI::IsMember({"generic", "cancellative", "naive"}));
        sub->add_flag("--verify", o.verify, "model check the certificates");
        sub->add_flag("--naive-split", o.naive_split, "cross-check the partition against naive refinement");
    };

    auto* certify_cmd = app.add_subcommand("certify", "partition and certificate dag");
    common(certify_cmd, true);
    certify_cmd->add_option("--logic", o.logic, "also print certificates in a domain logic");
    certify_cmd->add_option("--out", o.out_path, "write certificates to a file");
    certify_cmd->add_flag("--json", o.json, "print a structured run report");
    certify_cmd->add_flag("--no-timing", o.no_timing, "zero the timings in the report");

    auto* dist_cmd = app.add_subcommand("distinguish", "formula true at x and false at y");
    common(dist_cmd, true);
    dist_cmd->add_option("x", x)->required();
    dist_cmd->add_option("y", y)->required();
    dist_cmd->add_option("--logic", o.logic, "hm | weighted | signature | prob");

    auto* min_cmd = app.add_subcommand("minimize", "quotient by behavioural equivalence");
    common(min_cmd, true);
    min_cmd->add_option("--out", o.out_path, "write the quotient to a file");

    auto* check_cmd = app.add_subcommand("check", "states satisfying a formula");
    check_cmd->add_option("file", o.file, "model file ('-' for stdin)")->required();
    check_cmd->add_option("formula", formula)->required();
    check_cmd->add_option("--logic", o.logic, "parse the formula in this domain logic");

    auto* tr_cmd = app.add_subcommand("translate", "certificates in a domain logic");
    common(tr_cmd, true);
    tr_cmd->add_option("--logic", o.logic, "hm | weighted | signature | prob");
    tr_cmd->add_option("--out", o.out_path, "write to a file");

    auto* stats_cmd = app.add_subcommand("stats", "run report");
    common(stats_cmd, true);
    stats_cmd->add_flag("--json", o.json, "structured output");
    stats_cmd->add_flag("--no-timing", o.no_timing, "zero the timings");

    auto* gen_cmd = app.add_subcommand("gen", "random model");
    gen_cmd->add_option("--functor", g.functor, "functor expression")->required();
    gen_cmd->add_option("--n", g.spec.n, "state count");
    gen_cmd->add_option("--density", g.spec.density, "successor probability");
    gen_cmd->add_option("--max-weight", g.spec.max_weight, "largest weight magnitude");
    gen_cmd->add_option("--classes", g.spec.classes, "number of base states copied to fill n");
    gen_cmd->add_option("--seed", g.spec.seed, "random seed");
    gen_cmd->add_option("--out", o.out_path, "write to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (certify_cmd->parsed()) return cmd_certify(o, out);
        if (dist_cmd->parsed()) return cmd_distinguish(o, x, y, out);
        if (min_cmd->parsed()) return cmd_minimize(o, out);
        if (check_cmd->parsed()) return cmd_check(o, formula, out);
        if (tr_cmd->parsed()) return cmd_translate(o, out);
        if (stats_cmd->parsed()) return cmd_stats(o, out);
        if (gen_cmd->parsed()) return cmd_gen(g, o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const IncompatibleError& e) {
        err << "incompatible: " << e.what() << "\n";
        return kExitIncompatible;
    }
    return kExitInput;
}

}  // namespace cocert
