#include "nrd/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "nrd/embedding.hpp"
#include "nrd/hypergraph.hpp"
#include "nrd/kernel.hpp"
#include "nrd/zoo.hpp"

namespace nrd {

namespace {

// ---- JSON views of engine and pattern artifacts ----

Json witness_to_json(const WitnessCertificate& cert, const Instance& inst, const Domain& d) {
    Json j;
    j["clause_index"] = cert.clause_index;
    Json assign = Json::array();
    for (int v : cert.assignment) assign.push_back(d.name(v));
    j["assignment"] = std::move(assign);
    Json viol = Json::array();
    for (int v : cert.violated_value) viol.push_back(d.name(v));
    j["violated_value"] = std::move(viol);
    (void)inst;
    return j;
}

WitnessCertificate witness_from_json(const Json& j, const Domain& d) {
    WitnessCertificate cert;
    cert.clause_index = j.at("clause_index").get<int>();
    for (const auto& v : j.at("assignment")) cert.assignment.push_back(d.index(v.get<std::string>()));
    for (const auto& v : j.at("violated_value"))
        cert.violated_value.push_back(d.index(v.get<std::string>()));
    return cert;
}

Json report_to_json(const NrdReport& rep, const Instance& inst, const RelationPair& pair) {
    Json j;
    j["type"] = "nrd-report";
    j["mode"] = rep.mode == Mode::Conditional ? "conditional" : "plain";
    j["instance"] = to_json(inst);
    j["pair"] = to_json(pair);
    j["value"] = rep.value;
    j["nonredundant"] = rep.nonredundant;
    j["unknown"] = rep.unknown;
    Json per = Json::array();
    for (const auto& pc : rep.per_clause) {
        Json one;
        one["status"] = pc.status == SearchStatus::Found     ? "witness"
                        : pc.status == SearchStatus::None    ? "REDUNDANT"
                                                             : "UNKNOWN";
        if (pc.certificate) one["certificate"] = witness_to_json(*pc.certificate, inst, pair.s.domain);
        per.push_back(std::move(one));
    }
    j["per_clause"] = std::move(per);
    return j;
}

Json violation_to_json(const ViolationCertificate& cert, const RelationPair& pair, bool shared) {
    Json j;
    j["type"] = "pattern-violation";
    j["pattern"] = to_json(cert.pattern);
    j["shared_function"] = shared;
    j["pair"] = to_json(pair);
    const Domain& d = pair.s.domain;
    Json cols = Json::array();
    for (const auto& col : cert.columns) {
        Json row = Json::array();
        for (int v : col) row.push_back(d.name(v));
        cols.push_back(std::move(row));
    }
    j["columns"] = std::move(cols);
    Json out = Json::array();
    for (int v : cert.output) out.push_back(d.name(v));
    j["output"] = std::move(out);
    return j;
}

Json abelian_to_json(const AbelianReport& rep, const Relation& r) {
    Json j;
    j["type"] = "embedding";
    j["mode"] = "abelian";
    j["relation"] = to_json(r);
    j["verdict"] = rep.embeds;
    Json offs = Json::array();
    for (const auto& off : rep.offenders) {
        Json one;
        Json tup = Json::array();
        for (int v : off.tuple) tup.push_back(r.domain.name(v));
        one["tuple"] = std::move(tup);
        Json coeffs = Json::array();
        for (const auto& c : off.combination) coeffs.push_back(c.str());
        one["combination"] = std::move(coeffs);
        offs.push_back(std::move(one));
    }
    j["offenders"] = std::move(offs);
    return j;
}

// ---- relation/pair loading with zoo: shortcuts ----

Relation load_relation_arg(const std::string& spec) {
    if (spec.rfind("zoo:", 0) == 0) return zoo_relation(spec.substr(4), {});
    return load_relation(spec);
}

RelationPair load_pair_arg(const std::string& spec) {
    if (spec.rfind("zoo:", 0) == 0) return zoo_pair(spec.substr(4), {});
    Json j = load_json_file(spec);
    if (j.contains("scaffold_tuples")) return pair_from_json(j);
    Relation s = relation_from_json(j);
    return RelationPair(s, full_relation(s.domain, s.arity));
}

// For pattern commands a bare relation R means plain preservation, i.e. the
// target pair (R, R); a pair file (or zoo pair) keeps its scaffold.
RelationPair load_pattern_target(const std::string& spec, bool tilde) {
    RelationPair base = [&] {
        if (spec.rfind("zoo:", 0) == 0) {
            std::string name = spec.substr(4);
            for (const auto& e : zoo_entries())
                if (e.name == name && !e.is_pair) {
                    Relation r = zoo_relation(name, {});
                    return RelationPair(r, r);
                }
            return zoo_pair(name, {});
        }
        Json j = load_json_file(spec);
        if (j.contains("scaffold_tuples")) return pair_from_json(j);
        Relation r = relation_from_json(j);
        return RelationPair(r, r);
    }();
    if (tilde) return RelationPair(base.s, complement_tilde(base));
    return base;
}

MaltsevTerm load_maltsev_arg(const std::string& spec) {
    if (spec.rfind("group:", 0) == 0) return named_group_maltsev(spec.substr(6));
    if (spec.rfind("random:", 0) == 0) {
        std::mt19937 rng(static_cast<unsigned>(std::stoul(spec.substr(7))));
        return random_maltsev(rng);
    }
    Json j = load_json_file(spec);
    Domain d(j.at("domain").get<std::vector<std::string>>());
    std::vector<int> table;
    for (const auto& v : j.at("table")) table.push_back(d.index(v.get<std::string>()));
    return MaltsevTerm(d, table);
}

FiniteGroup load_group_arg(const std::string& path) {
    Json j = load_json_file(path);
    Domain d(j.at("elements").get<std::vector<std::string>>());
    std::vector<std::vector<int>> mult;
    for (const auto& row : j.at("mult")) {
        std::vector<int> r;
        for (const auto& v : row) r.push_back(d.index(v.get<std::string>()));
        mult.push_back(std::move(r));
    }
    return FiniteGroup(d, mult);
}

// ---- output plumbing ----

struct Emit {
    bool quiet = false;
    bool timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int done(const std::string& status, const Json& payload, const std::string& summary,
             const std::string& out_path = "") const {
        Json result;
        result["status"] = status;
        result["payload"] = payload;
        // Timing never enters the payload; outputs stay byte-deterministic
        // unless explicitly requested.
        if (timing)
            result["timing_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
        if (!out_path.empty()) save_json_file(out_path, result["payload"]);
        if (quiet)
            std::cout << summary << "\n";
        else
            std::cout << result.dump(2) << "\n";
        return status == "ok" ? 0 : status == "fail" ? 1 : 2;
    }
};

int verify_certificate_file(const std::string& path) {
    Json j = load_json_file(path);
    std::string type = j.value("type", "");
    if (type == "exclusion") {
        return verify_exclusion(exclusion_from_json(j)) ? 0 : 1;
    }
    if (type == "nrd-report") {
        Instance inst = instance_from_json(j.at("instance"));
        RelationPair pair = pair_from_json(j.at("pair"));
        Mode mode = j.at("mode").get<std::string>() == "conditional" ? Mode::Conditional : Mode::Plain;
        for (const auto& pc : j.at("per_clause")) {
            if (pc.at("status").get<std::string>() != "witness") continue;
            WitnessCertificate cert = witness_from_json(pc.at("certificate"), pair.s.domain);
            if (!verify_witness(inst, pair, mode, cert)) return 1;
        }
        return 0;
    }
    if (type == "pattern-violation") {
        RelationPair pair = pair_from_json(j.at("pair"));
        ViolationCertificate cert;
        cert.pattern = multisorted_from_json(j.at("pattern"));
        const Domain& d = pair.s.domain;
        for (const auto& row : j.at("columns")) {
            Tuple col;
            for (const auto& v : row) col.push_back(d.index(v.get<std::string>()));
            cert.columns.push_back(std::move(col));
        }
        for (const auto& v : j.at("output")) cert.output.push_back(d.index(v.get<std::string>()));
        return verify_violation(cert, pair) ? 0 : 1;
    }
    if (type == "embedding") {
        Relation r = relation_from_json(j.at("relation"));
        std::string mode = j.at("mode").get<std::string>();
        bool verdict = j.at("verdict").get<bool>();
        if (mode == "abelian") {
            // Re-evaluate each stored combination, then re-derive the verdict.
            for (const auto& off : j.at("offenders")) {
                Tuple t;
                for (const auto& v : off.at("tuple")) t.push_back(r.domain.index(v.get<std::string>()));
                std::vector<BigInt> sum(r.domain.size() * r.arity, 0);
                std::size_t i = 0;
                for (const auto& c : off.at("combination")) {
                    BigInt coeff(c.get<std::string>());
                    std::vector<BigInt> ind = indicator_vector(r.tuples.at(i++), r.domain.size());
                    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += coeff * ind[k];
                }
                if (sum != indicator_vector(t, r.domain.size())) return 1;
                if (r.contains(t)) return 1;
            }
            return abelian_embedding_check(r).embeds == verdict ? 0 : 1;
        }
        if (mode == "pauli") {
            const FiniteGroup& g = pauli_group();
            std::vector<int> eta;
            for (const auto& e : r.domain.elements) {
                std::string upper = e;
                for (auto& ch : upper) ch = static_cast<char>(std::toupper(ch));
                eta.push_back(g.elements.index(upper));
            }
            return verify_group_embedding(r, g, eta).embeds == verdict ? 0 : 1;
        }
        if (mode == "balanced") {
            int mmax = j.value("m_max", 9);
            return balanced_check(r, mmax).balanced == verdict ? 0 : 1;
        }
        return 1;
    }
    if (type == "kernel-trace") {
        SatDpInstance input = satdp_from_json(j.at("input"));
        SatDpInstance output = satdp_from_json(j.at("output"));
        KernelTrace trace = trace_from_json(j);
        SatDpInstance replayed = replay_trace(input, trace);
        bool same = replayed.variables == output.variables &&
                    replayed.cut_clauses == output.cut_clauses &&
                    replayed.ordp_clauses == output.ordp_clauses;
        return same ? 0 : 1;
    }
    throw std::runtime_error("unknown certificate type '" + type + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"nrd: executable non-redundancy toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Emit emit;
    app.add_flag("--quiet", emit.quiet, "one-line human summary instead of JSON");
    app.add_flag("--timing", emit.timing, "add wall-clock timing to the result envelope");
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for per-clause searches");

    // ---- zoo ----
    auto* zoo = app.add_subcommand("zoo", "named predicates and pairs");
    zoo->fallthrough();
    zoo->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "list zoo entries");
    auto* zoo_export = zoo->add_subcommand("export", "write a relation or pair to a file");
    std::string zoo_name, zoo_out;
    ZooParams zoo_params;
    zoo_export->add_option("--name", zoo_name)->required();
    zoo_export->add_option("--p", zoo_params.p);
    zoo_export->add_option("--q", zoo_params.q);
    zoo_export->add_option("--k", zoo_params.k);
    zoo_export->add_option("--m", zoo_params.m);
    zoo_export->add_option("--out", zoo_out)->required();

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate extremal instances");
    std::string gen_family, gen_graph = "heawood", gen_out, gen_pair_out, gen_sets;
    int gen_p = 2, gen_q = 1, gen_n = 4, gen_t = 2, gen_k = 3, gen_n3 = 1;
    gen->add_option("--family", gen_family, "or-dp | shoelace | or-family | girth | r2k")->required();
    gen->add_option("--p", gen_p);
    gen->add_option("--q", gen_q);
    gen->add_option("--n", gen_n);
    gen->add_option("--t", gen_t);
    gen->add_option("--k", gen_k);
    gen->add_option("--n3", gen_n3);
    gen->add_option("--graph", gen_graph, "builtin graph name for girth/r2k");
    gen->add_option("--sets", gen_sets,
                    "or-family members as '0,1;1,2;2,0' (0-based, default: the triangle family)");
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--pair-out", gen_pair_out);

    // ---- check ----
    auto* check = app.add_subcommand("check", "decide (conditional) non-redundancy");
    std::string check_instance, check_pair, check_out;
    bool check_conditional = false;
    std::uint64_t check_cap = SearchCaps{}.node_limit;
    check->add_option("--instance", check_instance)->required();
    check->add_option("--pair", check_pair)->required();
    check->add_flag("--conditional", check_conditional);
    check->add_option("--cap", check_cap);
    check->add_option("--out", check_out);

    // ---- exact ----
    auto* exact = app.add_subcommand("exact", "exact NRD value by branch and bound");
    std::string exact_pair, exact_relation;
    int exact_n = 3;
    bool exact_multipartite = false;
    std::uint64_t exact_cap = SearchCaps{}.node_limit;
    exact->add_option("--pair", exact_pair);
    exact->add_option("--relation", exact_relation);
    exact->add_option("--n", exact_n)->required();
    exact->add_flag("--multipartite", exact_multipartite);
    exact->add_option("--cap", exact_cap);

    // ---- pattern ----
    auto* pattern = app.add_subcommand("pattern", "pattern algebra");
    pattern->fallthrough();
    pattern->require_subcommand(1);
    auto* pat_pres = pattern->add_subcommand("preserves", "does a pattern preserve a pair");
    std::string pp_pattern, pp_pair, pp_out;
    bool pp_tilde = false, pp_multisorted = false;
    pat_pres->add_option("--pattern", pp_pattern)->required();
    pat_pres->add_option("--pair", pp_pair)->required();
    pat_pres->add_flag("--tilde", pp_tilde, "check against (S, T~) instead of (S, T)");
    pat_pres->add_flag("--multisorted", pp_multisorted);
    pat_pres->add_option("--out", pp_out);
    auto* pat_cnf = pattern->add_subcommand("cnf", "DIMACS export of the violation problem");
    std::string pc_pattern, pc_pair, pc_out;
    pat_cnf->add_option("--pattern", pc_pattern)->required();
    pat_cnf->add_option("--pair", pc_pair)->required();
    pat_cnf->add_option("--out", pc_out)->required();
    auto* pat_cube = pattern->add_subcommand("cube", "emit U_k or U_k^c");
    int cube_k = 3, cube_c = 1;
    std::string cube_out;
    pat_cube->add_option("--k", cube_k)->required();
    pat_cube->add_option("--power", cube_c);
    pat_cube->add_option("--out", cube_out)->required();
    auto* pat_lb = pattern->add_subcommand("lower-bound", "cube-power NRD lower bound");
    std::string lb_relation, lb_out;
    int lb_k = 3, lb_c = 2;
    pat_lb->add_option("--relation", lb_relation)->required();
    pat_lb->add_option("--k", lb_k)->required();
    pat_lb->add_option("--c", lb_c)->required();
    pat_lb->add_option("--out", lb_out);

    // ---- catalan ----
    auto* catalan = app.add_subcommand("catalan", "Catalan polymorphisms");
    catalan->fallthrough();
    catalan->require_subcommand(1);
    auto* cat_verify = catalan->add_subcommand("verify", "exhaustive cancellation check");
    std::string cv_maltsev;
    int cv_mmax = 7;
    cat_verify->add_option("--maltsev", cv_maltsev, "group:Z3 | random:SEED | file.json")->required();
    cat_verify->add_option("--mmax", cv_mmax);

    // ---- exclude ----
    auto* exclude = app.add_subcommand("exclude", "Mal'tsev-embedding exclusion search");
    std::string ex_relation, ex_out;
    int ex_mmax = 7;
    std::uint64_t ex_cap = 200'000'000;
    exclude->add_option("--relation", ex_relation)->required();
    exclude->add_option("--mmax", ex_mmax);
    exclude->add_option("--cap", ex_cap);
    exclude->add_option("--out", ex_out);

    // ---- embed ----
    auto* embed = app.add_subcommand("embed", "embedding decisions");
    std::string em_relation, em_mode, em_group, em_eta, em_out;
    int em_mmax = 9;
    embed->add_option("--relation", em_relation)->required();
    embed->add_option("--mode", em_mode, "abelian | pauli | balanced | group")->required();
    embed->add_option("--mmax", em_mmax);
    embed->add_option("--group", em_group, "multiplication-table JSON for --mode group");
    embed->add_option("--eta", em_eta, "comma list d:g mapping domain to group elements");
    embed->add_option("--out", em_out);

    // ---- hyper ----
    auto* hyper = app.add_subcommand("hyper", "pattern hypergraphs");
    hyper->fallthrough();
    hyper->require_subcommand(1);
    auto* hy_of = hyper->add_subcommand("of", "H(P) of a unit multisorted pattern");
    std::string ho_pattern, ho_out;
    hy_of->add_option("--pattern", ho_pattern)->required();
    hy_of->add_option("--out", ho_out)->required();
    auto* hy_free = hyper->add_subcommand("free", "search a hypergraph inside an instance");
    std::string hf_instance, hf_hyper;
    hy_free->add_option("--instance", hf_instance)->required();
    hy_free->add_option("--hyper", hf_hyper)->required();
    auto* hy_closure = hyper->add_subcommand("closure", "surjective-minor hypergraph closure");
    std::string hc_pattern, hc_out;
    hy_closure->add_option("--pattern", hc_pattern)->required();
    hy_closure->add_option("--out", hc_out)->required();
    auto* hy_exr = hyper->add_subcommand("exr", "exhaustive Turan search (n <= 7)");
    int xr_n = 5, xr_r = 2;
    std::string xr_hyper;
    bool xr_exhaustive = false;
    hy_exr->add_option("--n", xr_n)->required();
    hy_exr->add_option("--r", xr_r)->required();
    hy_exr->add_option("--hyper", xr_hyper)->required();
    hy_exr->add_flag("--exhaustive", xr_exhaustive, "acknowledge the doubly-exponential cost");

    // ---- kernel ----
    auto* kernel = app.add_subcommand("kernel", "SAT-DP kernelization");
    std::string kn_in, kn_cnf, kn_out, kn_trace;
    int kn_p = 3, kn_q = 2;
    kernel->add_option("--in", kn_in);
    kernel->add_option("--from-cnf", kn_cnf);
    kernel->add_option("--p", kn_p);
    kernel->add_option("--q", kn_q);
    kernel->add_option("--out", kn_out);
    kernel->add_option("--trace", kn_trace);

    // ---- verify-cert ----
    auto* verify = app.add_subcommand("verify-cert", "re-check an emitted certificate");
    std::string vc_file;
    verify->add_option("file", vc_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*zoo_list) {
            Json entries = Json::array();
            for (const auto& e : zoo_entries()) {
                Json one;
                one["name"] = e.name;
                one["params"] = e.params;
                one["kind"] = e.is_pair ? "pair" : "relation";
                entries.push_back(std::move(one));
            }
            return emit.done("ok", entries, std::to_string(zoo_entries().size()) + " entries");
        }
        if (*zoo_export) {
            bool is_pair = false;
            for (const auto& e : zoo_entries())
                if (e.name == zoo_name) is_pair = e.is_pair;
            Json payload = is_pair ? to_json(zoo_pair(zoo_name, zoo_params))
                                   : to_json(zoo_relation(zoo_name, zoo_params));
            save_json_file(zoo_out, payload);
            Json out;
            out["written"] = zoo_out;
            return emit.done("ok", out, "wrote " + zoo_out);
        }
        if (*gen) {
            GeneratedInstance g;
            if (gen_family == "or-dp")
                g = gen_or_dp_lower(gen_p, gen_q, gen_n);
            else if (gen_family == "shoelace")
                g = gen_shoelace_lower(gen_t);
            else if (gen_family == "or-family") {
                SetFamily family = shoelace_family();
                if (!gen_sets.empty()) {
                    std::vector<std::vector<int>> sets;
                    std::stringstream members(gen_sets);
                    std::string member;
                    while (std::getline(members, member, ';')) {
                        std::vector<int> set;
                        std::stringstream coords(member);
                        std::string coord;
                        while (std::getline(coords, coord, ',')) set.push_back(std::stoi(coord));
                        sets.push_back(std::move(set));
                    }
                    family = SetFamily(gen_p, gen_q, std::move(sets));
                }
                // The lower-bound generator needs only coverage; the matching
                // upper bound additionally needs q/p-regularity.
                if (!is_regular(family).regular)
                    std::cerr << "warning: family is not q/p-regular; the generated instance is a"
                                 " valid lower bound but the Shearer upper bound does not apply\n";
                g = gen_or_family_lower(family, gen_t);
            }
            else if (gen_family == "girth")
                g = {gen_girth_instance(builtin_graphs().at(gen_graph)), [&] {
                         CycleRelations c = build_cycles(gen_k);
                         return RelationPair(c.c_star, c.c);
                     }()};
            else if (gen_family == "r2k")
                g = gen_r2k_lower(gen_k, builtin_graphs().at(gen_graph), gen_n3);
            else
                throw std::invalid_argument("unknown generator family '" + gen_family + "'");
            save_json_file(gen_out, to_json(g.instance));
            if (!gen_pair_out.empty()) save_json_file(gen_pair_out, to_json(g.pair));
            Json payload;
            payload["variables"] = g.instance.n_variables();
            payload["clauses"] = g.instance.n_clauses();
            return emit.done("ok", payload,
                             std::to_string(g.instance.n_variables()) + " variables, " +
                                 std::to_string(g.instance.n_clauses()) + " clauses");
        }
        if (*check) {
            Instance inst = load_instance(check_instance);
            RelationPair pair = load_pair_arg(check_pair);
            Mode mode = check_conditional ? Mode::Conditional : Mode::Plain;
            NrdReport rep = check_nonredundant(inst, pair, mode, {check_cap}, jobs);
            Json payload = report_to_json(rep, inst, pair);
            std::string status = rep.unknown ? "unknown" : rep.nonredundant ? "ok" : "fail";
            std::string summary = rep.unknown        ? "unknown (cap exceeded)"
                                  : rep.nonredundant ? "non-redundant"
                                                     : "redundant";
            return emit.done(status, payload, summary, check_out);
        }
        if (*exact) {
            ExactNrdOptions opts;
            opts.multipartite = exact_multipartite;
            opts.caps.node_limit = exact_cap;
            ExactNrdResult res;
            if (!exact_pair.empty()) {
                RelationPair pair = load_pair_arg(exact_pair);
                res = exact_nrd(pair, exact_n, Mode::Conditional, opts);
            } else if (!exact_relation.empty()) {
                res = exact_nrd(load_relation_arg(exact_relation), exact_n, opts);
            } else {
                throw std::invalid_argument("exact needs --pair or --relation");
            }
            Json payload;
            payload["value"] = res.value;
            payload["exact"] = res.exact;
            return emit.done(res.exact ? "ok" : "unknown", payload,
                             (res.exact ? "NRD = " : "NRD >= ") + std::to_string(res.value));
        }
        if (*pat_pres) {
            RelationPair target = load_pattern_target(pp_pair, pp_tilde);
            Json pj = load_json_file(pp_pattern);
            PreservesResult res;
            bool shared = !pp_multisorted;
            if (pp_multisorted)
                res = preserves(multisorted_from_json(pj), target);
            else
                res = preserves(pattern_from_json(pj), target);
            Json payload;
            payload["result"] = res.status == PreservesStatus::Preserved   ? "preserved"
                                : res.status == PreservesStatus::Violated ? "violated"
                                                                          : "unknown";
            if (res.certificate)
                payload["certificate"] = violation_to_json(*res.certificate, target, shared);
            std::string status = res.status == PreservesStatus::Preserved   ? "ok"
                                 : res.status == PreservesStatus::Violated ? "fail"
                                                                           : "unknown";
            return emit.done(status, payload, payload["result"].get<std::string>(), pp_out);
        }
        if (*pat_cnf) {
            RelationPair pair = load_pattern_target(pc_pair, false);
            Cnf cnf = export_cnf_violation(pattern_from_json(load_json_file(pc_pattern)), pair);
            std::ofstream out(pc_out);
            if (!out) throw std::runtime_error("cannot open '" + pc_out + "'");
            out << to_dimacs(cnf);
            Json payload;
            payload["vars"] = cnf.n_vars;
            payload["clauses"] = cnf.clauses.size();
            return emit.done("ok", payload, "wrote " + pc_out);
        }
        if (*pat_cube) {
            Pattern p = cube_pattern(cube_k);
            if (cube_c > 1) p = power(p, cube_c);
            save_json_file(cube_out, to_json(p));
            Json payload;
            payload["arity"] = p.arity;
            payload["identities"] = p.identities.size();
            return emit.done("ok", payload, "wrote " + cube_out);
        }
        if (*pat_lb) {
            Relation r = load_relation_arg(lb_relation);
            CubePowerReport rep = cube_power_lower_bound(r, lb_k, lb_c);
            Json payload;
            payload["status"] = rep.status == PreservesStatus::Violated    ? "violated"
                                : rep.status == PreservesStatus::Preserved ? "preserved"
                                                                           : "unknown";
            if (rep.status == PreservesStatus::Violated) {
                payload["exponent"] = rep.exponent;
                payload["certificate"] =
                    violation_to_json(*rep.certificate, RelationPair(r, r), true);
            }
            std::string status = rep.status == PreservesStatus::Violated    ? "ok"
                                 : rep.status == PreservesStatus::Preserved ? "fail"
                                                                            : "unknown";
            std::string summary = rep.status == PreservesStatus::Violated
                                      ? "NRD lower bound exponent " + std::to_string(rep.exponent)
                                      : "no violation";
            return emit.done(status, payload, summary, lb_out);
        }
        if (*cat_verify) {
            const char* cache = std::getenv("NRD_CACHE_DIR");
            CatalanFamily fam(load_maltsev_arg(cv_maltsev), cache ? cache : "");
            CatalanReport rep = verify_catalan(fam, cv_mmax);
            Json payload;
            payload["ok"] = rep.ok;
            payload["checked"] = rep.checked;
            payload["m_max"] = cv_mmax;
            return emit.done(rep.ok ? "ok" : "fail", payload,
                             rep.ok ? "all cancellation identities hold" : "violation found");
        }
        if (*exclude) {
            Relation r = load_relation_arg(ex_relation);
            std::string name = ex_relation.rfind("zoo:", 0) == 0 ? ex_relation.substr(4) : ex_relation;
            ExclusionSearchResult res = exclusion_search(r, ex_mmax, ex_cap, name);
            Json payload;
            if (res.status == ExclusionStatus::Found) {
                payload = to_json(*res.certificate);
                if (!ex_out.empty()) save_json_file(ex_out, payload);
                return emit.done("ok", payload,
                                 "certificate at m = " + std::to_string(res.certificate->m));
            }
            payload["found"] = false;
            payload["m_reached"] = res.m_reached;
            if (res.status == ExclusionStatus::Capped)
                return emit.done("unknown", payload, "search capped");
            return emit.done("fail", payload,
                             "none found up to m = " + std::to_string(res.m_reached));
        }
        if (*embed) {
            Relation r = load_relation_arg(em_relation);
            if (em_mode == "abelian") {
                AbelianReport rep = abelian_embedding_check(r);
                Json payload = abelian_to_json(rep, r);
                return emit.done(rep.embeds ? "ok" : "fail", payload,
                                 rep.embeds ? "abelian embedding exists" : "no abelian embedding",
                                 em_out);
            }
            if (em_mode == "pauli" || em_mode == "group") {
                const FiniteGroup* group;
                FiniteGroup loaded;
                std::vector<int> eta;
                if (em_mode == "pauli") {
                    group = &pauli_group();
                    for (const auto& e : r.domain.elements) {
                        std::string upper = e;
                        for (auto& ch : upper) ch = static_cast<char>(std::toupper(ch));
                        eta.push_back(group->elements.index(upper));
                    }
                } else {
                    loaded = load_group_arg(em_group);
                    group = &loaded;
                    eta.assign(r.domain.size(), -1);
                    std::stringstream ss(em_eta);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto pos = item.find(':');
                        if (pos == std::string::npos)
                            throw std::invalid_argument("--eta entries look like d:g");
                        eta[r.domain.index(item.substr(0, pos))] =
                            group->elements.index(item.substr(pos + 1));
                    }
                    for (int v : eta)
                        if (v == -1) throw std::invalid_argument("--eta must cover the domain");
                }
                GroupEmbeddingReport rep = verify_group_embedding(r, *group, eta);
                Json payload;
                payload["type"] = "embedding";
                payload["mode"] = em_mode;
                payload["relation"] = to_json(r);
                payload["verdict"] = rep.embeds;
                Json closure = Json::array();
                for (const auto& t : rep.closure_in_image) {
                    Json row = Json::array();
                    for (int v : t) row.push_back(r.domain.name(v));
                    closure.push_back(std::move(row));
                }
                payload["closure_in_image"] = std::move(closure);
                return emit.done(rep.embeds ? "ok" : "fail", payload,
                                 rep.embeds ? "group embedding verified" : "not a group embedding",
                                 em_out);
            }
            if (em_mode == "balanced") {
                BalancedReport rep = balanced_check(r, em_mmax);
                Json payload;
                payload["type"] = "embedding";
                payload["mode"] = "balanced";
                payload["relation"] = to_json(r);
                payload["verdict"] = rep.balanced;
                payload["m_max"] = em_mmax;
                if (rep.counterexample) {
                    Json ce;
                    ce["m"] = rep.counterexample->m;
                    Json ts = Json::array();
                    for (const auto& t : rep.counterexample->tuples) {
                        Json row = Json::array();
                        for (int v : t) row.push_back(r.domain.name(v));
                        ts.push_back(std::move(row));
                    }
                    ce["tuples"] = std::move(ts);
                    Json sums = Json::array();
                    for (int v : rep.counterexample->sums) sums.push_back(r.domain.name(v));
                    ce["sums"] = std::move(sums);
                    payload["counterexample"] = std::move(ce);
                }
                return emit.done(rep.balanced ? "ok" : "fail", payload,
                                 rep.balanced ? "balanced" : "not balanced", em_out);
            }
            throw std::invalid_argument("unknown embed mode '" + em_mode + "'");
        }
        if (*hy_of) {
            MultisortedPattern p = multisorted_from_json(load_json_file(ho_pattern));
            PartiteHypergraph h = hypergraph_of(UnitPattern(p));
            save_json_file(ho_out, to_json(h));
            Json payload;
            payload["edges"] = h.edges.size();
            return emit.done("ok", payload, "wrote " + ho_out);
        }
        if (*hy_free) {
            Instance inst = load_instance(hf_instance);
            PartiteHypergraph h = hypergraph_from_json(load_json_file(hf_hyper));
            EmbedResult res = hfree_check(to_hypergraph(inst), h);
            Json payload;
            payload["embedded"] = res.status == EmbedStatus::Found;
            std::string status = res.status == EmbedStatus::Found     ? "ok"
                                 : res.status == EmbedStatus::None    ? "fail"
                                                                      : "unknown";
            return emit.done(status, payload,
                             res.status == EmbedStatus::Found ? "embedding found" : "H-free");
        }
        if (*hy_closure) {
            MultisortedPattern p = multisorted_from_json(load_json_file(hc_pattern));
            std::vector<PartiteHypergraph> closure = hq_closure({p});
            Json payload = Json::array();
            for (const auto& h : closure) payload.push_back(to_json(h));
            save_json_file(hc_out, payload);
            Json summary;
            summary["count"] = closure.size();
            return emit.done("ok", summary, std::to_string(closure.size()) + " hypergraphs");
        }
        if (*hy_exr) {
            if (!xr_exhaustive)
                throw std::invalid_argument("hyper exr needs --exhaustive (doubly exponential)");
            PartiteHypergraph h = hypergraph_from_json(load_json_file(xr_hyper));
            int value = ex_r_search(xr_n, xr_r, {h});
            Json payload;
            payload["ex_r"] = value;
            return emit.done("ok", payload, "ex_r = " + std::to_string(value));
        }
        if (*kernel) {
            SatDpInstance input;
            if (!kn_cnf.empty()) {
                std::ifstream in(kn_cnf);
                if (!in) throw std::runtime_error("cannot open '" + kn_cnf + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                input = cnf_to_satdp(parse_dimacs(buf.str()), kn_p, kn_q);
            } else if (!kn_in.empty()) {
                input = satdp_from_json(load_json_file(kn_in));
            } else {
                throw std::invalid_argument("kernel needs --in or --from-cnf");
            }
            KernelResult res = kernelize(input);
            if (!kn_out.empty()) save_json_file(kn_out, to_json(res.instance));
            Json trace = to_json(res.trace);
            trace["input"] = to_json(input);
            trace["output"] = to_json(res.instance);
            if (!kn_trace.empty()) save_json_file(kn_trace, trace);
            Json payload;
            payload["verdict"] = res.trace.verdict;
            payload["vars_before"] = res.trace.vars_before;
            payload["vars_after"] = res.trace.vars_after;
            payload["size_report"] = [&] {
                SizeReport s = size_report(input, res.instance);
                Json js;
                js["c_pq"] = s.c_pq;
                js["clause_bound"] = s.clause_bound;
                js["within_bound"] = s.within_bound;
                js["boolean_sets"] = s.boolean_sets;
                js["shadow_size"] = s.shadow_size;
                js["padding_vars"] = s.padding_vars;
                return js;
            }();
            return emit.done("ok", payload, "kernelized: " + res.trace.verdict);
        }
        if (*verify) {
            int code = verify_certificate_file(vc_file);
            Json payload;
            payload["verified"] = code == 0;
            return emit.done(code == 0 ? "ok" : "fail", payload,
                             code == 0 ? "certificate verified" : "certificate rejected");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand dispatched\n";
    return 64;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full = {"nrd"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : full) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace nrd
