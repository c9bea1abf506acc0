#include "stabpoly/jobs.hpp"

#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "stabpoly/parabolic.hpp"
#include "stabpoly/stability.hpp"
#include "stabpoly/version.hpp"
#include "stabpoly/witness.hpp"

namespace stabpoly {

using nlohmann::json;

namespace {

struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string p, const std::string& msg)
        : std::runtime_error(msg + " (at " + p + ")"), path(std::move(p)) {}
};

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(path + "." + key, "missing required field");
    return j.at(key);
}

Rat rat_field(const json& j, const std::string& path) {
    if (!j.is_string())
        throw SchemaError(path, "expected an exact rational string \"p/q\"");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
}

AlcovePoint point_field(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of rational strings");
    AlcovePoint p;
    for (size_t i = 0; i < j.size(); ++i)
        p.coords.push_back(rat_field(j.at(i), path + "[" + std::to_string(i) + "]"));
    return p;
}

json point_json(const AlcovePoint& p) {
    json out = json::array();
    for (const auto& c : p.coords) out.push_back(rat_str(c));
    return out;
}

json wall_json(const Wall& w) {
    json jw;
    jw["k"] = w.k;
    jw["d"] = w.d;
    json classes = json::array();
    for (const auto& c : w.classes) classes.push_back(c.str());
    jw["classes"] = classes;
    jw["subsets"] = w.subsets;
    jw["gw"] = w.gw;
    return jw;
}

json wall_eval_json(const WallEvaluation& e) {
    json j = wall_json(e.wall);
    j["lhs"] = rat_str(e.lhs);
    j["rhs"] = e.wall.d;
    return j;
}

json schema_json(const ExtendedWeightSchema& s) {
    json j;
    json steps = json::array();
    for (const auto& st : s.steps) steps.push_back({{"weight", rat_str(st.weight)}, {"mult", st.mult}});
    j["steps"] = steps;
    j["flag_dims"] = s.flag_dims();
    j["line_twists"] = s.line_twists;
    j["underlying_degree"] = s.underlying_degree.str();
    j["has_weight_one"] = s.has_weight_one;
    return j;
}

int status_exit(Status s) {
    switch (s) {
        case Status::Stable: return 0;
        case Status::StrictlySemistable: return 3;
        case Status::Unstable: return 4;
    }
    return 2;
}

json run_classify(const RootDatum& rd, const json& payload) {
    AlcovePoint x = point_field(field(payload, "point", "payload"), "payload.point");
    Facet f = classify_facet(rd, x);
    json out;
    out["facet"] = {{"vanishing", f.vanishing},
                    {"signs", f.signs},
                    {"dim", f.dim},
                    {"vertex_labels", f.vertex_labels(rd.rank)}};
    if (payload.contains("rho")) {
        const json& jr = payload.at("rho");
        if (!jr.is_string()) throw SchemaError("payload.rho", "expected a representation label");
        RepWeights rho = RepWeights::by_name(rd, jr.get<std::string>());
        GeneralizedFacet g = rho_facet_classify(rd, rho, x);
        int vanishing = 0;
        for (auto s : g.signs) vanishing += s == 0;
        out["rho_facet"] = {{"dim", g.dim},
                            {"vanishing_count", vanishing},
                            {"hyperplane_count", g.signs.size()}};
    }
    return out;
}

json run_extend(const RootDatum& rd, const json& payload) {
    const json& jr = field(payload, "rho", "payload");
    if (!jr.is_string()) throw SchemaError("payload.rho", "expected a representation label");
    RepWeights rho = RepWeights::by_name(rd, jr.get<std::string>());
    AlcovePoint theta = point_field(field(payload, "theta", "payload"), "payload.theta");
    AlcovePoint witness = theta;
    if (payload.contains("facet_witness"))
        witness = point_field(payload.at("facet_witness"), "payload.facet_witness");
    GeneralizedFacet facet = rho_facet_classify(rd, rho, witness);
    ExtendedWeightSchema schema = extend_weights(rd, rho, theta, facet);
    json out;
    out["schema"] = schema_json(schema);
    out["facet_dim"] = facet.dim;
    return out;
}

json run_gw(const json& payload) {
    const json& js = field(payload, "shape", "payload");
    if (!js.is_array() || js.size() != 2 || !js.at(0).is_number_integer() ||
        !js.at(1).is_number_integer())
        throw SchemaError("payload.shape", "expected [k, n]");
    GWQuery q;
    q.shape = make_shape(js.at(0).get<int>(), js.at(1).get<int>());
    const json& jd = field(payload, "degree", "payload");
    if (!jd.is_number_integer()) throw SchemaError("payload.degree", "expected an integer");
    q.degree = jd.get<int>();
    const json& jc = field(payload, "classes", "payload");
    if (!jc.is_array()) throw SchemaError("payload.classes", "expected an array of partitions");
    for (size_t i = 0; i < jc.size(); ++i) {
        const json& e = jc.at(i);
        if (!e.is_string())
            throw SchemaError("payload.classes[" + std::to_string(i) + "]",
                              "expected a partition string like \"2,1\"");
        q.classes.push_back(parse_partition(e.get<std::string>()));
    }
    json out;
    out["value"] = gw_number(q);
    return out;
}

json run_walls(const RootDatum& rd, const json& payload) {
    const json& jp = field(payload, "points", "payload");
    if (!jp.is_number_integer() || jp.get<int>() < 1)
        throw SchemaError("payload.points", "expected a positive point count");
    std::optional<int> filter;
    if (payload.contains("parabolic")) {
        if (!payload.at("parabolic").is_number_integer())
            throw SchemaError("payload.parabolic", "expected an integer");
        filter = payload.at("parabolic").get<int>();
    }
    auto walls = enumerate_walls(rd, jp.get<int>(), filter);
    json out;
    out["count"] = walls.size();
    json arr = json::array();
    for (const auto& w : walls) arr.push_back(wall_json(w));
    out["walls"] = arr;
    return out;
}

std::pair<json, int> run_check(const RootDatum& rd, const json& payload) {
    const json& jp = field(payload, "points", "payload");
    if (!jp.is_array() || jp.empty())
        throw SchemaError("payload.points", "expected a nonempty array of alcove points");
    std::vector<AlcovePoint> pts;
    for (size_t i = 0; i < jp.size(); ++i)
        pts.push_back(point_field(jp.at(i), "payload.points[" + std::to_string(i) + "]"));
    ThetaTuple theta = make_theta_tuple(rd, std::move(pts));
    ExistenceResult res = exists_irreducible_hom(theta);
    json out;
    out["status"] = status_name(res.verdict.status);
    out["exists_irreducible"] = res.exists;
    out["wall_count"] = res.verdict.wall_count;
    out["equality_wall_count"] = res.verdict.equality_walls.size();
    out["criteria_agree"] = res.criteria_agree;
    if (res.verdict.certificate) out["certificate"] = wall_eval_json(*res.verdict.certificate);
    json scan = json::array();
    for (const auto& e : res.scan.entries) {
        json je = wall_eval_json(WallEvaluation{e.wall, e.lhs});
        je["pardeg_zero"] = e.pardeg_zero;
        je["quotient_degree"] = e.quotient_degree.str();
        je["minus_one"] = e.minus_one;
        je["deformable"] = e.deformable;
        scan.push_back(je);
    }
    out["minus_one_scan"] = scan;
    return {out, status_exit(res.verdict.status)};
}

json matrix_json(const Unitary& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return {{"re", re}, {"im", im}};
}

json run_witness(const RootDatum& rd, const json& payload) {
    std::vector<ClassSpec> specs;
    if (payload.contains("theta")) {
        const json& jt = payload.at("theta");
        if (!jt.is_array()) throw SchemaError("payload.theta", "expected an array of alcove points");
        for (size_t i = 0; i < jt.size(); ++i) {
            AlcovePoint p = point_field(jt.at(i), "payload.theta[" + std::to_string(i) + "]");
            classify_facet(rd, p);
            specs.push_back(class_spec_from_theta(rd, p));
        }
    } else if (payload.contains("angles")) {
        const json& ja = payload.at("angles");
        if (!ja.is_array()) throw SchemaError("payload.angles", "expected arrays of angles");
        for (size_t i = 0; i < ja.size(); ++i) {
            AlcovePoint p = point_field(ja.at(i), "payload.angles[" + std::to_string(i) + "]");
            specs.push_back(make_class_spec(p.coords));
        }
    } else {
        throw SchemaError("payload", "witness needs either theta or angles");
    }
    SearchParams params;
    if (payload.contains("budget")) {
        if (!payload.at("budget").is_number_integer())
            throw SchemaError("payload.budget", "expected an integer");
        params.budget = payload.at("budget").get<long>();
    }
    if (payload.contains("seed")) {
        if (!payload.at("seed").is_number_integer())
            throw SchemaError("payload.seed", "expected an integer");
        params.seed = payload.at("seed").get<std::uint64_t>();
    }
    SearchOutcome outcome = search(specs, params);
    json out;
    out["found_irreducible"] = outcome.found_irreducible;
    out["restarts_used"] = outcome.restarts_used;
    out["product_one_finds"] = outcome.product_one_finds.size();
    if (outcome.witness) {
        json w;
        w["residual"] = outcome.witness->tuple.residual;
        w["irreducibility_margin"] = outcome.witness->irred.margin;
        w["restart"] = outcome.witness->restart;
        json ms = json::array();
        for (const auto& m : outcome.witness->tuple.matrices) ms.push_back(matrix_json(m));
        w["matrices"] = ms;
        out["witness"] = w;
    } else if (!outcome.product_one_finds.empty()) {
        const auto& f = outcome.product_one_finds.front();
        json w;
        w["residual"] = f.tuple.residual;
        w["irreducibility_margin"] = f.irred.margin;
        w["irreducible"] = f.irred.status == IrredStatus::Irreducible;
        out["best_reducible_find"] = w;
    }
    return out;
}

}  // namespace

JobSpec JobSpec::from_json(const json& j) {
    JobSpec spec;
    const json& jc = field(j, "command", "job");
    if (!jc.is_string()) throw SchemaError("job.command", "expected a command string");
    spec.command = jc.get<std::string>();
    static const char* known[] = {"classify", "extend", "gw", "walls", "check", "witness"};
    bool ok = false;
    for (const char* k : known) ok = ok || spec.command == k;
    if (!ok) throw SchemaError("job.command", "unknown command '" + spec.command + "'");
    if (spec.command != "gw") {
        const json& jg = field(j, "group", "job");
        if (!jg.is_string()) throw SchemaError("job.group", "expected a group string like \"A2\"");
        spec.group = jg.get<std::string>();
    } else if (j.contains("group") && j.at("group").is_string()) {
        spec.group = j.at("group").get<std::string>();
    }
    spec.payload = field(j, "payload", "job");
    if (!spec.payload.is_object()) throw SchemaError("job.payload", "expected an object");
    if (j.contains("output_path")) {
        if (!j.at("output_path").is_string())
            throw SchemaError("job.output_path", "expected a string");
        spec.output_path = j.at("output_path").get<std::string>();
    }
    return spec;
}

json JobSpec::to_json() const {
    json j;
    j["command"] = command;
    if (!group.empty()) j["group"] = group;
    j["payload"] = payload;
    if (!output_path.empty()) j["output_path"] = output_path;
    return j;
}

std::string input_hash(const JobSpec& job) {
    std::string dump = job.to_json().dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << h;
    return os.str();
}

RunResult run(const JobSpec& job) {
    auto t0 = std::chrono::steady_clock::now();
    json env;
    env["command"] = job.command;
    env["input"] = job.to_json();
    env["input_hash"] = input_hash(job);
    env["version"] = kVersion;
    int exit_code = 0;
    try {
        json result;
        if (job.command == "gw") {
            result = run_gw(job.payload);
            env["status"] = "ok";
        } else {
            RootDatum rd = build_root_datum(job.group);
            if (job.command == "classify") {
                result = run_classify(rd, job.payload);
                env["status"] = "ok";
            } else if (job.command == "extend") {
                result = run_extend(rd, job.payload);
                env["status"] = "ok";
            } else if (job.command == "walls") {
                result = run_walls(rd, job.payload);
                env["status"] = "ok";
            } else if (job.command == "check") {
                auto [r, code] = run_check(rd, job.payload);
                result = r;
                env["status"] = r["status"];
                exit_code = code;
            } else if (job.command == "witness") {
                result = run_witness(rd, job.payload);
                env["status"] = "ok";
            }
        }
        env["result"] = result;
    } catch (const SchemaError& e) {
        env["status"] = "error";
        env["error"] = {{"message", e.what()}, {"path", e.path}};
        exit_code = 2;
    } catch (const std::exception& e) {
        env["status"] = "error";
        env["error"] = {{"message", e.what()}};
        exit_code = 2;
    }
    auto t1 = std::chrono::steady_clock::now();
    env["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return RunResult{env, exit_code};
}

int severity_rank(int exit_code) {
    switch (exit_code) {
        case 0: return 0;
        case 3: return 1;
        case 4: return 2;
        default: return 3;  // errors dominate
    }
}

BatchResult batch_jobs(const std::vector<std::string>& lines, int workers) {
    BatchResult out;
    out.results.resize(lines.size());
    if (workers < 1) workers = 1;
    std::mutex mu;
    size_t next = 0;
    auto worker = [&] {
        while (true) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= lines.size()) return;
                i = next++;
            }
            RunResult r;
            try {
                JobSpec spec = JobSpec::from_json(json::parse(lines[i]));
                r = run(spec);
            } catch (const std::exception& e) {
                r.envelope = {{"status", "error"},
                              {"error", {{"message", e.what()}}},
                              {"version", kVersion},
                              {"line", i}};
                r.exit_code = 2;
            }
            out.results[i] = std::move(r);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int worst = 0;
    for (const auto& r : out.results)
        if (severity_rank(r.exit_code) > severity_rank(worst)) worst = r.exit_code;
    out.exit_code = worst;
    return out;
}

BatchResult batch(const std::string& path, int workers) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open batch file '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }
    return batch_jobs(lines, workers);
}

}  // namespace stabpoly
