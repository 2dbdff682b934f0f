// Command-line front end: validates fans, prints cone/chamber/MMP reports,
// computes geographies and separatrices, factors maps into links, and
// renders 1D/2D geographies as SVG.  All JSON output is deterministic:
// sorted keys, exact "p/q" rationals.
//
// Exit codes: 0 ok, 1 bad input, 2 classification inconsistency,
// 3 unsupported category.

#include "geolog/json_io.hpp"
#include "geolog/render_svg.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace geolog;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = dump_canonical(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

std::size_t thread_budget() {
    if (const char* env = std::getenv("GEOLOG_THREADS")) {
        long n = std::atol(env);
        if (n > 0) return std::size_t(n);
    }
    std::size_t hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

QVec parse_divisor(const std::string& text) {
    QVec out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(rat_from_string(tok));
    return out;
}

// cross-check randomly sampled boundaries against the chamber complex;
// a disagreement is a classification inconsistency
void verify_geography(const Geography& g, std::size_t samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(0, 64);
    std::vector<QVec> points;
    while (points.size() < samples) {
        QVec b;
        for (std::size_t i = 0; i < g.m; ++i) b.push_back(rat(num(rng), 64));
        if (g.cube.contains(b)) points.push_back(b);
    }
    std::vector<char> ok(points.size(), 0);
    std::size_t threads = std::min(thread_budget(), points.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (std::size_t i = next++; i < points.size(); i = next++) {
                CellPayload direct = evaluate_boundary(g, points[i]);
                const CellPayload& located =
                    g.payloads[g.complex.locate(points[i])];
                ok[i] = direct == located ? 1 : 0;
            }
        });
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!ok[i])
            throw classification_error("sample disagrees with the chamber complex");
}

std::vector<std::pair<std::size_t, Rat>> parse_slice(const std::string& text) {
    std::vector<std::pair<std::size_t, Rat>> fixed;
    if (text.empty()) return fixed;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("slice entries look like index=value");
        fixed.emplace_back(std::stoul(tok.substr(0, eq)),
                           rat_from_string(tok.substr(eq + 1)));
    }
    return fixed;
}

int run(int argc, char** argv) {
    CLI::App app{"exact geography of log models"};
    app.require_subcommand(1);

    std::string input, output, divisor_text, slice_text;
    std::size_t verify_samples = 0;
    unsigned seed = 0;

    auto add_io = [&](CLI::App* cmd, bool needs_divisor = false) {
        cmd->add_option("input", input, "input JSON file")->required();
        cmd->add_option("-o,--output", output, "output path (default stdout)");
        if (needs_divisor)
            cmd->add_option("--divisor", divisor_text,
                            "comma-separated rational coefficients")
                ->required();
    };

    CLI::App* fan = app.add_subcommand("fan", "fan inspection");
    CLI::App* fan_validate = fan->add_subcommand("validate", "check the fan axioms");
    add_io(fan_validate);

    CLI::App* cones = app.add_subcommand("cones", "nef/mobile/effective cones");
    add_io(cones);

    CLI::App* chambers = app.add_subcommand("chambers", "Mori chamber decomposition");
    add_io(chambers);

    CLI::App* mmp = app.add_subcommand("mmp", "divisor-directed model program");
    add_io(mmp, true);

    CLI::App* geography = app.add_subcommand("geography", "boundary cube geography");
    add_io(geography);
    geography->add_option("--verify", verify_samples,
                          "cross-check N random samples against the complex");
    geography->add_option("--seed", seed, "sampling seed");

    CLI::App* separatrix = app.add_subcommand("separatrix", "fibration boundary");
    add_io(separatrix);

    CLI::App* zariski = app.add_subcommand("zariski", "mobile/exceptional split");
    add_io(zariski, true);

    CLI::App* links = app.add_subcommand("links", "link chains");
    CLI::App* links_factor =
        links->add_subcommand("factor", "factor a map of Mori fibrations");
    add_io(links_factor);

    CLI::App* render = app.add_subcommand("render", "SVG picture of a geography");
    add_io(render);
    render->add_option("--slice", slice_text,
                       "pinned coordinates for m > 2, e.g. \"2=1/2,3=0\"");

    CLI11_PARSE(app, argc, argv);

    if (fan_validate->parsed()) {
        ToricModel x = model_from_json(read_json(input).at("fan"));
        Json j;
        j["ok"] = true;
        j["q_factorial"] = x.q_factorial;
        j["proper"] = x.proper;
        j["projective"] = x.projective;
        j["rays"] = x.fan.rays.size();
        j["maximal_cones"] = x.fan.cones.size();
        emit(j, output);
    } else if (cones->parsed()) {
        Json in = read_json(input);
        if (in.contains("surface"))
            emit(cones_json(positive_cones(surface_from_json(in.at("surface")))), output);
        else
            emit(cones_json(positive_cones(model_from_json(in.at("fan")))), output);
    } else if (chambers->parsed()) {
        ToricModel x = model_from_json(read_json(input).at("fan"));
        emit(chambers_json(mori_chambers(x)), output);
    } else if (mmp->parsed()) {
        ToricModel x = model_from_json(read_json(input).at("fan"));
        emit(mmp_json(run_dmmp(x, parse_divisor(divisor_text))), output);
    } else if (geography->parsed()) {
        Geography g = build_geography(geography_input_from_json(read_json(input)));
        if (verify_samples) verify_geography(g, verify_samples, seed);
        emit(geography_json(g), output);
    } else if (separatrix->parsed()) {
        Geography g = build_geography(geography_input_from_json(read_json(input)));
        emit(separatrix_json(g, separatrix_and_projection(g)), output);
    } else if (zariski->parsed()) {
        Json in = read_json(input);
        QVec d = parse_divisor(divisor_text);
        if (in.contains("surface"))
            emit(zariski_json(zariski_decomposition(surface_from_json(in.at("surface")), d)),
                 output);
        else
            emit(mob_exc_json(mob_exc(model_from_json(in.at("fan")), d)), output);
    } else if (links_factor->parsed()) {
        Json in = read_json(input);
        ToricModel src = model_from_json(in.at("source"));
        ToricModel dst = model_from_json(in.at("target"));
        QMat mu = in.contains("map") ? mat_from_json(in.at("map")) : QMat();
        if (mu.empty())
            for (std::size_t i = 0; i < src.fan.rank; ++i) {
                QVec e = qvec_zero(src.fan.rank);
                e[i] = 1;
                mu.push_back(e);
            }
        MmpRun r1 = resulting_model(src, QVec(src.fan.rays.size(), Rat(0)));
        MmpRun r2 = resulting_model(dst, QVec(dst.fan.rays.size(), Rat(0)));
        if (!r1.fibration || !r2.fibration)
            throw std::invalid_argument("both models must carry Mori fibrations");
        emit(chain_json(factor_mori_map(*r1.fibration_rec, *r2.fibration_rec, mu)),
             output);
    } else if (render->parsed()) {
        Geography g = build_geography(geography_input_from_json(read_json(input)));
        emit_text(render_geography_svg(g, parse_slice(slice_text)), output);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const classification_error& e) {
        std::cerr << "classification inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
}
