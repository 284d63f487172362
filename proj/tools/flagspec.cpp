// Command-line front end: JSON in, JSON out, deterministic output.
// Exit codes: 0 success, 1 input validation failure, 2 mathematical
// invariant violation, 3 resource bound exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "flagspec/json_io.hpp"

using nlohmann::json;
using namespace flagspec;

namespace {

struct Options {
    std::string input_path;
    std::string type = "A";
    int rank = 1;
    std::string lattice = "simply_connected";
    std::string lattice_basis;  // JSON matrix, optional
    long prime = 2;
    std::string theory = "chow";
    bool pretty = false;
    int jobs = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RootDatum datum_from_options(const Options& opt) {
    json spec;
    spec["type"] = opt.type;
    spec["rank"] = opt.rank;
    if (!opt.lattice_basis.empty()) {
        json basis = json::parse(opt.lattice_basis, nullptr, false);
        if (basis.is_discarded()) throw validation_error("lattice basis is not valid JSON");
        spec["lattice_basis"] = basis;
    } else {
        spec["lattice"] = opt.lattice;
    }
    return root_datum_from_json(spec.dump());
}

void emit(const std::string& command, const std::string& result_json, bool pretty) {
    json out;
    out["command"] = command;
    out["result"] = json::parse(result_json);
    std::cout << out.dump(pretty ? 2 : -1) << "\n";
}

int run_specseq(const Options& opt) {
    CubeOfComplexes cube = cube_from_json(read_file(opt.input_path));
    int stable = cube.m + 2;

    std::vector<std::string> page_docs(static_cast<std::size_t>(stable));
    auto compute_one = [&](int r) {
        SpectralSequencePage page = e1_page(cube);
        for (int k = 1; k < r; ++k) page = turn_page(page);
        return page_to_json(page);
    };
    if (opt.jobs > 1) {
        std::vector<std::future<std::string>> futures;
        for (int r = 1; r <= stable; ++r)
            futures.push_back(std::async(std::launch::async, compute_one, r));
        for (int r = 1; r <= stable; ++r)
            page_docs[static_cast<std::size_t>(r - 1)] = futures[static_cast<std::size_t>(r - 1)].get();
    } else {
        for (int r = 1; r <= stable; ++r)
            page_docs[static_cast<std::size_t>(r - 1)] = compute_one(r);
    }

    json result;
    json pages = json::array();
    for (const auto& doc : page_docs) pages.push_back(json::parse(doc));
    result["pages"] = std::move(pages);
    result["convergence"] = json::parse(convergence_to_json(e_infinity_compare(cube)));
    emit("specseq", result.dump(), opt.pretty);
    return 0;
}

int run_flag_chow(const Options& opt) {
    ChowFlagRing r = chow_flag_ring(datum_from_options(opt));
    emit("flag-chow", chow_ring_summary_json(r), opt.pretty);
    return 0;
}

int run_flag_k0(const Options& opt) {
    K0FlagRing r = k0_flag_ring(datum_from_options(opt));
    emit("flag-k0", k0_ring_summary_json(r), opt.pretty);
    return 0;
}

int run_group_ring(const Options& opt) {
    RootDatum rd = datum_from_options(opt);
    if (opt.theory == "chow") {
        emit("group-ring", graded_quotient_to_json(group_ring_quotient(chow_flag_ring(rd))),
             opt.pretty);
        return 0;
    }
    if (opt.theory == "k0") {
        emit("group-ring", k0_quotient_to_json(group_ring_quotient(k0_flag_ring(rd))), opt.pretty);
        return 0;
    }
    throw validation_error("unknown theory '" + opt.theory + "' (expected chow or k0)");
}

int run_torsion_index(const Options& opt) {
    emit("torsion-index",
         torsion_index_to_json(torsion_index(chow_flag_ring(datum_from_options(opt)))), opt.pretty);
    return 0;
}

int run_j_invariant(const Options& opt) {
    ChowFlagRing r = chow_flag_ring(datum_from_options(opt));
    if (!opt.input_path.empty()) {
        ImageSublattice image = image_from_json(read_file(opt.input_path), &r, nullptr);
        emit("j-invariant", j_invariant_to_json(j_invariant(r, Int(opt.prime), &image)), opt.pretty);
    } else {
        emit("j-invariant", j_invariant_to_json(j_invariant(r, Int(opt.prime))), opt.pretty);
    }
    return 0;
}

int run_tits_indexes(const Options& opt) {
    K0FlagRing r = k0_flag_ring(datum_from_options(opt));
    emit("tits-indexes", tits_indexes_to_json(r, maximal_tits_indexes(r)), opt.pretty);
    return 0;
}

int run_hat_ring(const Options& opt) {
    RootDatum rd = datum_from_options(opt);
    if (opt.input_path.empty())
        throw validation_error("hat-ring needs an image sublattice file (--input)");
    if (opt.theory == "chow") {
        ChowFlagRing r = chow_flag_ring(rd);
        ImageSublattice image = image_from_json(read_file(opt.input_path), &r, nullptr);
        emit("hat-ring", graded_quotient_to_json(hat_ring(r, image)), opt.pretty);
        return 0;
    }
    if (opt.theory == "k0") {
        K0FlagRing r = k0_flag_ring(rd);
        ImageSublattice image = image_from_json(read_file(opt.input_path), nullptr, &r);
        emit("hat-ring", k0_quotient_to_json(hat_ring(r, image)), opt.pretty);
        return 0;
    }
    throw validation_error("unknown theory '" + opt.theory + "' (expected chow or k0)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral sequences of cubes of complexes and flag-variety invariants"};
    app.require_subcommand(1);
    Options opt;

    auto add_datum_flags = [&](CLI::App* cmd) {
        cmd->add_option("--type", opt.type, "Dynkin type A..G");
        cmd->add_option("--rank", opt.rank, "rank 1..8");
        cmd->add_option("--lattice", opt.lattice, "simply_connected or adjoint");
        cmd->add_option("--lattice-basis", opt.lattice_basis,
                        "explicit T* basis matrix as a JSON array of rows");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--pretty", opt.pretty, "indent the JSON output");
        cmd->add_option("--jobs", opt.jobs, "parallelize independent computations")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* specseq = app.add_subcommand("specseq", "spectral sequence of a cube of complexes");
    specseq->add_option("--input", opt.input_path, "cube JSON file")->required();
    add_common(specseq);

    CLI::App* flag_chow = app.add_subcommand("flag-chow", "Chow ring of G/B in the Schubert basis");
    add_datum_flags(flag_chow);
    add_common(flag_chow);

    CLI::App* flag_k0 = app.add_subcommand("flag-k0", "K0 of G/B in the Steinberg basis");
    add_datum_flags(flag_k0);
    add_common(flag_k0);

    CLI::App* group_ring = app.add_subcommand("group-ring", "quotient ring of G");
    add_datum_flags(group_ring);
    group_ring->add_option("--theory", opt.theory, "chow or k0");
    add_common(group_ring);

    CLI::App* torsion = app.add_subcommand("torsion-index", "characteristic map image indexes");
    add_datum_flags(torsion);
    add_common(torsion);

    CLI::App* jinv = app.add_subcommand("j-invariant", "mod-p shape of the quotient ring");
    add_datum_flags(jinv);
    jinv->add_option("--prime", opt.prime, "prime modulus")->required();
    jinv->add_option("--input", opt.input_path, "optional image sublattice JSON file");
    add_common(jinv);

    CLI::App* tits = app.add_subcommand("tits-indexes", "maximal Tits indexes");
    add_datum_flags(tits);
    add_common(tits);

    CLI::App* hat = app.add_subcommand("hat-ring", "quotient by an image sublattice");
    add_datum_flags(hat);
    hat->add_option("--theory", opt.theory, "chow or k0");
    hat->add_option("--input", opt.input_path, "image sublattice JSON file")->required();
    add_common(hat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (specseq->parsed()) return run_specseq(opt);
        if (flag_chow->parsed()) return run_flag_chow(opt);
        if (flag_k0->parsed()) return run_flag_k0(opt);
        if (group_ring->parsed()) return run_group_ring(opt);
        if (torsion->parsed()) return run_torsion_index(opt);
        if (jinv->parsed()) return run_j_invariant(opt);
        if (tits->parsed()) return run_tits_indexes(opt);
        if (hat->parsed()) return run_hat_ring(opt);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bound_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
