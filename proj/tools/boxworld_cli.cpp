// Command-line front end: box/coupler validation, non-locality swapping,
// coupler classification, wiring enumeration, and CSV sweeps of the
// perfect/minimal coupler boundaries.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "boxworld/boxworld.hpp"

namespace bw = boxworld;

namespace {

unsigned default_precision() {
    if (const char* env = std::getenv("BOXWORLD_PRECISION")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1 && v <= 60) return static_cast<unsigned>(v);
        } catch (...) {
        }
        std::cerr << "warning: ignoring invalid BOXWORLD_PRECISION='" << env << "'\n";
    }
    return 12;
}

// Coupler spec mini-language: "X_t,X_b" with scalar expressions, or a named
// preset. Irrational parameters enter symbolically via the r/BQ tokens.
bw::Coupler parse_coupler_spec(const std::string& spec) {
    if (spec == "genuine") return bw::make_coupler(bw::ExactScalar(bw::Rational(3, 2)), bw::ExactScalar(0));
    const bw::ExactScalar bq = bw::ExactScalar::tsirelson_bound();
    if (spec == "quantum-perfect") return bw::make_coupler(bq, bw::perfect_xb(bq));
    if (spec == "quantum-minimal") return bw::make_coupler(bq, bw::ExactScalar(0));
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw bw::parse_error("coupler spec must be 'X_t,X_b' or a preset "
                              "(genuine, quantum-perfect, quantum-minimal): '" +
                              spec + "'");
    return bw::make_coupler(bw::parse_scalar(spec.substr(0, comma)),
                            bw::parse_scalar(spec.substr(comma + 1)));
}

int parse_bit(char c, const std::string& spec) {
    if (c != '0' && c != '1') throw bw::parse_error("expected bit in box spec '" + spec + "'");
    return c - '0';
}

// Box specs: pr | anti-pr | mixed | det:ABCD | prvar:ABC | iso:<scalar> |
// iso:threshold | noisy:ABCD:<scalar> | @file.json
bw::BipartiteBox parse_box_spec(const std::string& spec, const bw::Coupler* coupler) {
    if (spec == "pr") return bw::make_pr();
    if (spec == "anti-pr" || spec == "antipr") return bw::make_anti_pr();
    if (spec == "mixed") return bw::make_maximally_mixed();
    if (spec.rfind("det:", 0) == 0) {
        if (spec.size() != 8) throw bw::parse_error("det: needs four bits, e.g. det:1010");
        return bw::make_deterministic(parse_bit(spec[4], spec), parse_bit(spec[5], spec),
                                      parse_bit(spec[6], spec), parse_bit(spec[7], spec));
    }
    if (spec.rfind("prvar:", 0) == 0) {
        if (spec.size() != 9) throw bw::parse_error("prvar: needs three bits, e.g. prvar:001");
        return bw::make_pr_variant(parse_bit(spec[6], spec), parse_bit(spec[7], spec),
                                   parse_bit(spec[8], spec));
    }
    if (spec.rfind("iso:", 0) == 0) {
        const std::string arg = spec.substr(4);
        if (arg == "threshold") {
            if (!coupler)
                throw bw::parse_error("iso:threshold needs a coupler context");
            const bw::ExactScalar v = bw::swap_threshold(*coupler);
            return bw::make_isotropic((v + bw::ExactScalar(bw::Rational(1, 2))) / bw::ExactScalar(2));
        }
        return bw::make_isotropic(bw::parse_scalar(arg));
    }
    if (spec.rfind("noisy:", 0) == 0) {
        const auto second = spec.find(':', 6);
        if (second == std::string::npos || second != 10)
            throw bw::parse_error("noisy: needs four bits and a scalar, e.g. noisy:0000:3/4");
        const bw::ExactScalar xi = bw::parse_scalar(spec.substr(second + 1));
        return bw::tensor(
            bw::make_noisy_local_pair(parse_bit(spec[6], spec), parse_bit(spec[7], spec), xi),
            bw::make_noisy_local_pair(parse_bit(spec[8], spec), parse_bit(spec[9], spec), xi));
    }
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw bw::io_error("cannot open box file '" + spec.substr(1) + "'");
        nlohmann::json j;
        in >> j;
        return bw::box_from_json(j);
    }
    throw bw::parse_error("unknown box spec '" + spec + "'");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw bw::io_error("cannot open output file '" + path + "'");
    out << content;
}

std::string render(const bw::ExactScalar& v, unsigned precision) {
    return v.to_string() + "  (" + v.to_decimal(precision) + ")";
}

std::string render_table(const bw::BipartiteBox& box, unsigned precision) {
    std::ostringstream os;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            os << "  x=" << x << " y=" << y << ":";
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    os << "  P(" << a << b << ")=" << box.at(a, b, x, y).to_decimal(precision);
            os << "\n";
        }
    return os.str();
}

// Index-parallel loop; results must be written to per-index slots.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(n, hw ? hw : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct SweepRow {
    bw::ExactScalar x_top, perfect, minimal, z_b, z_t, p_success;
    std::string marker;
};

SweepRow compute_row(const bw::ExactScalar& x_top) {
    SweepRow row;
    row.x_top = x_top;
    row.perfect = bw::perfect_xb(x_top);
    row.minimal = bw::minimal_xb(x_top);
    const auto z = bw::noisy_local_bounds(bw::top_xi(x_top));
    row.z_b = z.first;
    row.z_t = z.second;
    const bw::Coupler perfect = bw::make_coupler(x_top, row.perfect);
    const bw::BipartiteBox top = bw::make_isotropic(bw::top_xi(x_top));
    row.p_success = bw::success_probability(perfect, top, top);
    return row;
}

// X_t -> 1 limit of the boundary formulas; the theory functions themselves
// exclude X_t = 1, so the limit row is evaluated from the closed forms.
SweepRow limit_row() {
    SweepRow row;
    row.x_top = bw::ExactScalar(1);
    row.perfect = bw::ExactScalar(bw::Rational(1, 4));
    row.minimal = bw::ExactScalar(bw::Rational(1, 4));
    row.z_b = bw::ExactScalar(bw::Rational(3, 8));
    row.z_t = bw::ExactScalar(bw::Rational(5, 8));
    row.p_success = bw::ExactScalar(bw::Rational(1, 3));
    row.marker = "limit";
    return row;
}

int run_swap(const std::string& coupler_spec, const std::string& ab_spec,
             const std::string& bc_spec, const std::string& format, unsigned precision,
             const std::string& output) {
    const bw::Coupler coupler = parse_coupler_spec(coupler_spec);
    const bw::BipartiteBox ab = parse_box_spec(ab_spec, &coupler);
    const bw::BipartiteBox bc = parse_box_spec(bc_spec, &coupler);
    if (!bw::verify_box(ab).all()) throw bw::domain_error("--ab box fails verification");
    if (!bw::verify_box(bc).all()) throw bw::domain_error("--bc box fails verification");
    const bw::SwapOutcome out = bw::swap_boxes(coupler, ab, bc);
    if (format == "json") {
        nlohmann::json j = bw::outcome_to_json(out);
        j["coupler"] = {{"x_top", coupler.x_top.to_string()},
                        {"x_bottom", coupler.x_bottom.to_string()}};
        write_output(output, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << "coupler: X_t = " << render(coupler.x_top, precision)
       << ", X_b = " << render(coupler.x_bottom, precision) << "\n";
    os << "p_success  = " << render(out.p_success, precision) << "\n";
    os << "ch_success = " << render(out.ch_success, precision) << "\n";
    os << "ch_failure = " << render(out.ch_failure, precision) << "\n";
    os << "success box:\n" << render_table(out.success_box, precision);
    os << "failure box:\n" << render_table(out.failure_box, precision);
    write_output(output, os.str());
    return 0;
}

int run_classify(const std::string& xt_spec, const std::string& xb_spec,
                 const std::string& format, const std::string& output) {
    const bw::ExactScalar xt = bw::parse_scalar(xt_spec);
    const bw::ExactScalar xb = bw::parse_scalar(xb_spec);
    const bw::CouplerClass cls = bw::classify(xt, xb);
    if (format == "json") {
        nlohmann::json j = {{"x_top", xt.to_string()},
                            {"x_bottom", xb.to_string()},
                            {"class", bw::to_string(cls)}};
        write_output(output, j.dump(2) + "\n");
        return 0;
    }
    write_output(output, bw::to_string(cls) + "\n");
    return 0;
}

int run_sweep(const std::string& from_spec, const std::string& to_spec, unsigned steps,
              const std::string& format, unsigned precision, const std::string& output) {
    const bw::ExactScalar from = bw::parse_scalar(from_spec);
    const bw::ExactScalar to = bw::parse_scalar(to_spec);
    if ((from - 1).sign() < 0 || (to - bw::ExactScalar(bw::Rational(3, 2))).sign() > 0 ||
        (to - from).sign() <= 0 || steps < 1)
        throw bw::domain_error("sweep grid must satisfy 1 <= from < to <= 3/2, steps >= 1");

    // grid points from + k*(to-from)/steps, k = 1..steps: always inside (1, 3/2]
    const bw::ExactScalar step = (to - from) / bw::ExactScalar(static_cast<int>(steps));
    std::vector<SweepRow> rows(steps);
    parallel_for(steps, [&](std::size_t k) {
        rows[k] = compute_row(from + bw::ExactScalar(static_cast<int>(k + 1)) * step);
    });
    rows.push_back([&] {
        SweepRow dot = compute_row(bw::ExactScalar::tsirelson_bound());
        dot.marker = "dot";
        return dot;
    }());
    rows.push_back(limit_row());

    std::ostringstream os;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            arr.push_back({{"x_top", row.x_top.to_decimal(precision)},
                           {"perfect_xb", row.perfect.to_decimal(precision)},
                           {"minimal_xb", row.minimal.to_decimal(precision)},
                           {"z_b", row.z_b.to_decimal(precision)},
                           {"z_t", row.z_t.to_decimal(precision)},
                           {"p_success_perfect", row.p_success.to_decimal(precision)},
                           {"x_top_exact", row.x_top.to_string()},
                           {"perfect_xb_exact", row.perfect.to_string()},
                           {"minimal_xb_exact", row.minimal.to_string()},
                           {"z_b_exact", row.z_b.to_string()},
                           {"z_t_exact", row.z_t.to_string()},
                           {"p_success_perfect_exact", row.p_success.to_string()},
                           {"marker", row.marker}});
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "x_top,perfect_xb,minimal_xb,z_b,z_t,p_success_perfect,"
              "x_top_exact,perfect_xb_exact,minimal_xb_exact,z_b_exact,z_t_exact,"
              "p_success_perfect_exact,marker\n";
        for (const auto& row : rows) {
            os << row.x_top.to_decimal(precision) << "," << row.perfect.to_decimal(precision)
               << "," << row.minimal.to_decimal(precision) << "," << row.z_b.to_decimal(precision)
               << "," << row.z_t.to_decimal(precision) << ","
               << row.p_success.to_decimal(precision) << "," << row.x_top.to_string() << ","
               << row.perfect.to_string() << "," << row.minimal.to_string() << ","
               << row.z_b.to_string() << "," << row.z_t.to_string() << ","
               << row.p_success.to_string() << "," << row.marker << "\n";
        }
    }
    write_output(output, os.str());
    return 0;
}

int run_wirings(const std::string& output) {
    const std::vector<bw::Wiring> wirings = bw::enumerate_all_wirings();
    std::size_t counts[5] = {0, 0, 0, 0, 0};
    for (const auto& w : wirings) counts[static_cast<std::size_t>(w.kind)]++;
    if (!output.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& w : wirings) arr.push_back(bw::wiring_to_json(w));
        write_output(output, arr.dump(2) + "\n");
    }
    std::cout << "deterministic: " << counts[0] << "\n"
              << "and: " << counts[1] << "\n"
              << "one-sided: " << counts[2] << "\n"
              << "xor: " << counts[3] << "\n"
              << "sequential: " << counts[4] << "\n"
              << "total: " << wirings.size() << "\n";
    return 0;
}

int run_verify(const std::string& box_spec, const std::string& coupler_spec,
               const std::string& format, const std::string& output) {
    if (box_spec.empty() == coupler_spec.empty())
        throw bw::parse_error("verify needs exactly one of --box or --coupler");
    if (!box_spec.empty()) {
        const bw::BipartiteBox box = parse_box_spec(box_spec, nullptr);
        const bw::BoxReport rep = bw::verify_box(box);
        if (format == "json") {
            nlohmann::json j = {{"nonneg", rep.nonneg},
                                {"normalized", rep.normalized},
                                {"nonsignalling", rep.nonsignalling},
                                {"valid", rep.all()}};
            write_output(output, j.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << "nonneg: " << (rep.nonneg ? "true" : "false") << "\n"
               << "normalized: " << (rep.normalized ? "true" : "false") << "\n"
               << "nonsignalling: " << (rep.nonsignalling ? "true" : "false") << "\n"
               << (rep.all() ? "valid" : "invalid") << "\n";
            write_output(output, os.str());
        }
        return rep.all() ? 0 : 1;
    }
    const bw::Coupler coupler = parse_coupler_spec(coupler_spec);
    const bw::CouplerClass cls = bw::classify(coupler.x_top, coupler.x_bottom);
    const bw::TheoryModel model = bw::TheoryModel::make(coupler.x_top, coupler.x_bottom);
    const bool consistent = bw::coupler_valid_on(coupler, model.genuine_extremal_boxes());
    if (format == "json") {
        nlohmann::json j = {{"class", bw::to_string(cls)},
                            {"consistent_on_genuine_boxes", consistent}};
        write_output(output, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "class: " << bw::to_string(cls) << "\n"
           << "consistent on genuine boxes: " << (consistent ? "true" : "false") << "\n";
        write_output(output, os.str());
    }
    return consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact non-signalling box calculus and non-locality swapping couplers"};
    app.require_subcommand(1);

    unsigned precision = default_precision();

    auto* swap_cmd = app.add_subcommand("swap", "apply a coupler to Bob's halves of two boxes");
    std::string swap_coupler, swap_ab, swap_bc, swap_format = "text", swap_output;
    swap_cmd->add_option("--coupler", swap_coupler, "coupler spec 'X_t,X_b' or preset")->required();
    swap_cmd->add_option("--ab", swap_ab, "Alice-Bob box spec")->required();
    swap_cmd->add_option("--bc", swap_bc, "Bob-Charlie box spec")->required();
    swap_cmd->add_option("--format", swap_format)->check(CLI::IsMember({"text", "json"}));
    swap_cmd->add_option("--precision", precision)->check(CLI::Range(1u, 60u));
    swap_cmd->add_option("--output", swap_output, "write to file instead of stdout");

    auto* classify_cmd = app.add_subcommand("classify", "classify a coupler (X_t, X_b)");
    std::string cls_xt, cls_xb, cls_format = "text", cls_output;
    classify_cmd->add_option("x_top", cls_xt, "upper CH bound, e.g. 3/2 or BQ");
    classify_cmd->add_option("x_bottom", cls_xb, "lower CH bound, e.g. 0 or -1/2");
    classify_cmd->add_option("--xt", cls_xt, "upper CH bound (overrides positional)");
    classify_cmd->add_option("--xb", cls_xb, "lower CH bound (overrides positional)");
    classify_cmd->add_option("--format", cls_format)->check(CLI::IsMember({"text", "json"}));
    classify_cmd->add_option("--output", cls_output);

    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate coupler boundaries over an X_t grid");
    std::string sweep_from = "1", sweep_to = "3/2", sweep_format = "csv", sweep_output;
    unsigned sweep_steps = 20;
    sweep_cmd->add_option("--from", sweep_from, "grid start (exclusive), >= 1");
    sweep_cmd->add_option("--to", sweep_to, "grid end (inclusive), <= 3/2");
    sweep_cmd->add_option("--steps", sweep_steps, "number of grid points");
    sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--precision", precision)->check(CLI::Range(1u, 60u));
    sweep_cmd->add_option("--output", sweep_output);

    auto* wirings_cmd = app.add_subcommand("wirings", "enumerate the 82 extremal wirings");
    std::string wirings_output;
    wirings_cmd->add_option("--output", wirings_output, "write the wiring JSON to this file");

    auto* verify_cmd = app.add_subcommand("verify", "verify a box or a coupler");
    std::string verify_box, verify_coupler, verify_format = "text", verify_output;
    verify_cmd->add_option("--box", verify_box, "box spec to verify");
    verify_cmd->add_option("--coupler", verify_coupler, "coupler spec to verify");
    verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--output", verify_output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(swap_cmd))
            return run_swap(swap_coupler, swap_ab, swap_bc, swap_format, precision, swap_output);
        if (app.got_subcommand(classify_cmd)) {
            if (cls_xt.empty() || cls_xb.empty())
                throw bw::parse_error("classify needs X_t and X_b (positional or --xt/--xb)");
            return run_classify(cls_xt, cls_xb, cls_format, cls_output);
        }
        if (app.got_subcommand(sweep_cmd))
            return run_sweep(sweep_from, sweep_to, sweep_steps, sweep_format, precision,
                             sweep_output);
        if (app.got_subcommand(wirings_cmd)) return run_wirings(wirings_output);
        if (app.got_subcommand(verify_cmd))
            return run_verify(verify_box, verify_coupler, verify_format, verify_output);
    } catch (const bw::error& e) {
        std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
