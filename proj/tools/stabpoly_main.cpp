#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "stabpoly/jobs.hpp"
#include "stabpoly/version.hpp"

using nlohmann::json;

namespace {

json coords_json(const std::string& csv) {
    json arr = json::array();
    size_t pos = 0;
    while (pos <= csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        arr.push_back(csv.substr(pos, comma - pos));
        pos = comma + 1;
        if (comma == csv.size()) break;
    }
    return arr;
}

json points_json(const std::vector<std::string>& tokens) {
    json arr = json::array();
    for (const auto& t : tokens) arr.push_back(coords_json(t));
    return arr;
}

int emit(const stabpoly::RunResult& r, const std::string& output) {
    std::string text = r.envelope.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write to '" << output << "'\n";
            return 2;
        }
        out << text;
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability polytope toolkit: alcove facets, parabolic bundle calculus, "
                 "quantum Schubert walls, membership verdicts, unitary witness search"};
    app.set_version_flag("--version", stabpoly::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string group = "A1";
    std::string output;
    int workers = 1;
    std::uint64_t seed = 0;
    app.add_option("--group", group, "group specifier, e.g. A2 or C3")->capture_default_str();
    app.add_option("--output", output, "write the result envelope to this path");
    app.add_option("--workers", workers, "batch worker cap")->capture_default_str();
    app.add_option("--seed", seed, "master seed for randomized commands");

    // classify
    auto* classify = app.add_subcommand("classify", "facet and rho-facet of an alcove point");
    std::string cl_point, cl_rho;
    classify->add_option("--point", cl_point, "alcove point, comma-separated rationals")->required();
    classify->add_option("--rho", cl_rho, "representation label (Id, Ad, Sym2)");

    // extend
    auto* extend = app.add_subcommand("extend", "extending weights for a representation");
    std::string ex_rho, ex_theta, ex_witness;
    extend->add_option("--rho", ex_rho, "representation label (Id, Ad, Sym2)")->required();
    extend->add_option("--theta", ex_theta, "alcove point, comma-separated rationals")->required();
    extend->add_option("--facet-witness", ex_witness,
                       "interior point naming the rho-facet (defaults to theta's own facet)");

    // gw
    auto* gw = app.add_subcommand("gw", "Gromov-Witten number on a Grassmannian");
    std::string gw_shape, gw_classes;
    int gw_degree = 0;
    gw->add_option("--shape", gw_shape, "k,n")->required();
    gw->add_option("--degree", gw_degree, "map degree d")->required();
    gw->add_option("--classes", gw_classes, "semicolon-separated partitions, e.g. 2,1;1;1")
        ->required();

    // walls
    auto* walls = app.add_subcommand("walls", "enumerate stability walls");
    int walls_points = 0, walls_parabolic = 0;
    walls->add_option("--points", walls_points, "number of marked points")->required();
    auto* wp = walls->add_option("--parabolic", walls_parabolic, "restrict to one parabolic index");

    // check
    auto* check = app.add_subcommand("check", "membership verdict for a weight tuple");
    std::vector<std::string> check_theta;
    check->add_option("--theta", check_theta,
                      "alcove points, one token per marked point (comma-separated coords)")
        ->required()
        ->expected(-1);

    // witness
    auto* witness = app.add_subcommand("witness", "numeric unitary witness search");
    std::vector<std::string> wit_theta;
    long wit_budget = 10000;
    witness->add_option("--theta", wit_theta, "alcove points, one token per marked point")
        ->required()
        ->expected(-1);
    witness->add_option("--budget", wit_budget, "total sweep budget")->capture_default_str();

    // batch
    auto* batchcmd = app.add_subcommand("batch", "run newline-delimited JSON jobs from a file");
    std::string batch_path;
    batchcmd->add_option("file", batch_path, "job file path")->required();

    CLI11_PARSE(app, argc, argv);

    stabpoly::JobSpec job;
    job.group = group;
    job.output_path = output;

    try {
        if (*classify) {
            job.command = "classify";
            job.payload["point"] = coords_json(cl_point);
            if (!cl_rho.empty()) job.payload["rho"] = cl_rho;
        } else if (*extend) {
            job.command = "extend";
            job.payload["rho"] = ex_rho;
            job.payload["theta"] = coords_json(ex_theta);
            if (!ex_witness.empty()) job.payload["facet_witness"] = coords_json(ex_witness);
        } else if (*gw) {
            job.command = "gw";
            auto shape = coords_json(gw_shape);
            if (shape.size() != 2) {
                std::cerr << "--shape expects k,n\n";
                return 2;
            }
            job.payload["shape"] = {std::stoi(shape[0].get<std::string>()),
                                    std::stoi(shape[1].get<std::string>())};
            job.payload["degree"] = gw_degree;
            json classes = json::array();
            std::string cs = gw_classes;
            size_t pos = 0;
            while (pos <= cs.size()) {
                size_t semi = cs.find(';', pos);
                if (semi == std::string::npos) semi = cs.size();
                classes.push_back(cs.substr(pos, semi - pos));
                pos = semi + 1;
                if (semi == cs.size()) break;
            }
            job.payload["classes"] = classes;
        } else if (*walls) {
            job.command = "walls";
            job.payload["points"] = walls_points;
            if (wp->count()) job.payload["parabolic"] = walls_parabolic;
        } else if (*check) {
            job.command = "check";
            job.payload["points"] = points_json(check_theta);
        } else if (*witness) {
            job.command = "witness";
            job.payload["theta"] = points_json(wit_theta);
            job.payload["budget"] = wit_budget;
            job.payload["seed"] = seed;
        } else if (*batchcmd) {
            auto result = stabpoly::batch(batch_path, workers);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!output.empty()) {
                file.open(output);
                if (!file) {
                    std::cerr << "cannot write to '" << output << "'\n";
                    return 2;
                }
                os = &file;
            }
            for (const auto& r : result.results) *os << r.envelope.dump() << "\n";
            return result.exit_code;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return emit(stabpoly::run(job), output);
}
