// SPDX-License-Identifier: Apache-2.0
//
// dftis: generate and verify DFT eigensequences, and simulate the multiuser
// real adder channel that uses them as signatures.
//
// Exit codes: 0 success, 1 domain error (degenerate construction, scheduling,
// demodulation, bit errors), 2 I/O or parse error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dftis/dftis.hpp"
#include "dftis/io.hpp"

namespace {

using namespace dftis;
using io::json;

constexpr int exit_domain = 1;
constexpr int exit_io = 2;

std::string fmt12(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const parse_error*>(&e)) return "parse";
    if (dynamic_cast<const degenerate_input*>(&e)) return "degenerate";
    if (dynamic_cast<const scheduling_error*>(&e)) return "scheduling";
    if (dynamic_cast<const demodulation_error*>(&e)) return "demodulation";
    if (dynamic_cast<const framing_error*>(&e)) return "framing";
    if (dynamic_cast<const range_error*>(&e)) return "range";
    if (dynamic_cast<const numerical_error*>(&e)) return "numerical";
    if (dynamic_cast<const configuration_error*>(&e)) return "configuration";
    if (dynamic_cast<const invalid_input*>(&e)) return "invalid_input";
    return "internal";
}

int report_error(const std::exception& e, int code) {
    json err{{"error", error_kind(e)}, {"message", e.what()}};
    if (const auto* d = dynamic_cast<const demodulation_error*>(&e)) err["frame"] = d->frame();
    std::cerr << err.dump() << "\n";
    return code;
}

/// Uniform reals in [-1, 1) from the raw 64-bit stream, identical on every platform.
std::vector<double> random_real(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
    return v;
}

std::string random_bitstring(std::mt19937_64& rng, std::size_t n) {
    std::string s(n, '0');
    for (auto& c : s) c = (rng() >> 63) ? '1' : '0';
    return s;
}

/// A bare sequence, or the "seq" of an eigensequence object.
sequence load_sequence(const std::string& path) {
    const auto j = io::read_json_file(path);
    if (j.is_object() && j.contains("seq")) return io::sequence_from_json(j["seq"]);
    return io::sequence_from_json(j);
}

/// Registry entries, eigensequence objects or bare sequences, as plain sequences.
std::vector<sequence> load_signature_sequences(const std::string& path, tolerance tol) {
    const auto j = io::read_json_file(path);
    if (!j.is_array()) throw parse_error("signature file must be a JSON array");
    std::vector<sequence> out;
    for (const auto& e : j) {
        if (e.is_object() && e.contains("signature"))
            out.push_back(io::registry_entry_from_json(e, tol).user.seq());
        else if (e.is_object())
            out.push_back(io::eigensequence_from_json(e, tol).seq());
        else
            out.push_back(io::sequence_from_json(e));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw parse_error("failed writing '" + path + "'");
}

double residual_of(const eigensequence& e) {
    return max_abs_diff(unitary_dft(e.seq()), e.spectrum());
}

// ---------------------------------------------------------------------------

struct gen_options {
    bool even = false, odd = false, family = false;
    std::string sign = "+";
    std::string seq_path;
    std::size_t random_n = 0;
    std::uint64_t seed = 0;
    std::string out;
    double tol = 1e-9;
};

int run_gen(const gen_options& o) {
    const tolerance tol(o.tol);
    if (o.sign != "+" && o.sign != "-" && o.sign != "+1" && o.sign != "-1")
        throw invalid_input("--sign must be + or -");
    const int sign = o.sign[0] == '-' ? -1 : 1;

    std::optional<sequence> seed_seq;
    if (!o.seq_path.empty()) {
        seed_seq = load_sequence(o.seq_path);
    } else {
        std::mt19937_64 rng(o.seed);
        seed_seq = sequence::from_real(random_real(rng, o.random_n));
    }
    const std::size_t n = seed_seq->size();

    auto degenerate = [&](eigenvalue l) {
        return degenerate_input("construction produced the zero sequence (eigenspace " + std::string(to_string(l)) +
                                " has dimension " + std::to_string(eigenspace_dimension(n, l)) + " at N = " +
                                std::to_string(n) + ")");
    };

    std::vector<eigensequence> result;
    if (o.even || o.odd) {
        const auto y = o.even ? from_even(*seed_seq, sign, tol) : from_odd(*seed_seq, sign, tol);
        if (!y) {
            const auto l = o.even ? (sign > 0 ? eigenvalue::plus_one : eigenvalue::minus_one)
                                  : (sign > 0 ? eigenvalue::plus_j : eigenvalue::minus_j);
            throw degenerate(l);
        }
        result.push_back(*y);
    } else {
        // A random seed is first made invariant with the even construction.
        std::optional<eigensequence> base = o.seq_path.empty() ? from_even(*seed_seq, sign, tol)
                                                               : eigensequence::certify(*seed_seq, tol);
        if (!base) throw invalid_input("family seed is not a DFT eigensequence");
        result = generate_family(*base, tol);
        if (result.empty()) throw degenerate(base->lambda());
    }

    json doc;
    if (o.family) {
        doc = json::array();
        for (const auto& e : result) doc.push_back(io::to_json(e));
    } else {
        doc = io::to_json(result.front());
    }
    std::ostringstream report;
    for (const auto& e : result)
        report << "lambda " << to_string(e.lambda()) << ", residual " << fmt12(residual_of(e)) << "\n";

    if (o.out.empty()) {
        std::cout << doc.dump() << "\n";
        std::cerr << report.str();
    } else {
        write_text(o.out, doc.dump(2) + "\n");
        std::cout << report.str();
    }
    return 0;
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& path, double tol_eps) {
    const tolerance tol(tol_eps);
    const auto x = load_sequence(path);
    const auto c = classify_detail(x, tol);
    if (!c.lambda) {
        double best = c.residuals[0];
        for (double r : c.residuals) best = std::min(best, r);
        std::cout << "not invariant, min residual " << fmt12(best) << "\n";
        if (!c.diagnostic.empty()) std::cout << c.diagnostic << "\n";
        return exit_domain;
    }
    const auto l = *c.lambda;
    const auto mirror = is_real_eigenvalue(l) ? even_part(x) : odd_part(x);
    const bool parity_ok = approx_equal(mirror, x, tol);
    std::cout << to_string(l) << ", " << (is_real_eigenvalue(l) ? "even" : "odd")
              << (parity_ok ? "" : " (parity check FAILED)") << ", residual " << fmt12(c.residual_of(l)) << "\n";
    return parity_ok ? 0 : exit_domain;
}

// ---------------------------------------------------------------------------

int run_energy(const std::string& path, double e_max, double tol_eps) {
    const auto sigs = load_signature_sequences(path, tolerance(tol_eps));
    std::cout << fmt12(peak_coefficient(e_max, sigs)) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct loaded_registry {
    std::vector<user_signature> users;
    std::vector<double> priorities;
};

loaded_registry split_registry(const std::vector<io::registry_entry>& entries) {
    loaded_registry r;
    for (const auto& e : entries) {
        r.users.push_back(e.user);
        r.priorities.push_back(e.priority);
    }
    return r;
}

int run_schedule(const std::string& path, const std::string& case_name, std::uint64_t seed, std::size_t draws,
                 double tol_eps) {
    const auto reg = split_registry(io::registry_from_json(io::read_json_file(path), tolerance(tol_eps)));
    const auto rac = rac_case::parse(case_name);
    std::cout << "draw";
    for (int g : rac.groups()) std::cout << ",group" << g;
    std::cout << "\n";
    for (std::size_t k = 0; k < draws; ++k) {
        const auto chosen = schedule(reg.users, rac, seed + k, std::span<const double>(reg.priorities));
        std::cout << k;
        for (const auto& u : chosen) std::cout << "," << u.user_id();
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct simulate_options {
    std::string config;
    std::string registry;
    std::string case_name;
    unsigned bits = 0;
    double e_max = 0;
    std::size_t random_bits = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    double tol = 1e-9;
};

int run_simulate(const simulate_options& o) {
    const tolerance tol(o.tol);
    json cfg = o.config.empty() ? json::object() : io::read_json_file(o.config);
    if (!o.registry.empty()) cfg["users"] = io::read_json_file(o.registry);
    if (!o.case_name.empty()) cfg["case"] = o.case_name;
    if (o.bits > 0) cfg["b"] = o.bits;
    if (o.e_max > 0) {
        cfg.erase("M");
        cfg["e_max"] = o.e_max;
    }
    if (o.random_bits > 0) cfg["random_bits"] = o.random_bits;
    const auto session = io::session_from_json(cfg, tol);
    const std::uint64_t seed = o.seed.value_or(session.seed.value_or(0));

    const auto reg = split_registry(session.users);
    const auto active = schedule(reg.users, session.rac, seed, std::span<const double>(reg.priorities));
    const double peak = session.peak ? *session.peak : peak_coefficient(*session.e_max, active);
    const quantizer_config qcfg(session.bits, peak);

    std::vector<std::string> streams;
    std::mt19937_64 bit_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& u : active) {
        const auto it = std::find_if(session.bitstreams.begin(), session.bitstreams.end(),
                                     [&](const auto& p) { return p.first == u.user_id(); });
        if (it != session.bitstreams.end())
            streams.push_back(it->second);
        else if (session.random_bits > 0)
            streams.push_back(random_bitstring(bit_rng, session.random_bits));
        else
            throw configuration_error("no bitstream for user '" + u.user_id() + "' and no 'random_bits' given");
    }

    const auto frames = transmit(streams, active, session.rac, qcfg);
    const std::size_t n = active.front().size();

    std::ostringstream csv;
    csv << "frame_index";
    for (std::size_t i = 0; i < n; ++i) csv << ",y" << i;
    for (const auto& u : active)
        csv << ",a_sent_" << u.user_id() << ",a_recv_" << u.user_id() << ",word_sent_" << u.user_id() << ",word_recv_"
            << u.user_id();
    csv << ",energy\n";

    std::vector<std::string> received(active.size());
    double max_residual = 0, max_coeff_error = 0, energy_max = 0, max_imag = 0;
    json frames_json = json::array();
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const auto& f = frames[k];
        const auto sent = frame_weights(streams, k, qcfg);
        const auto recv = demodulate(f, active, qcfg, k, tol);
        const auto components = recover(f, tol);
        const double energy = channel_energy(f);
        energy_max = std::max(energy_max, energy);
        max_imag = std::max(max_imag, f.y.max_abs_imag());
        frames_json.push_back(io::to_json(f));

        csv << k;
        for (std::size_t i = 0; i < n; ++i) csv << "," << fmt12(f.y[i].real());
        for (std::size_t u = 0; u < active.size(); ++u) {
            for (const auto& c : components)
                if (c.group == active[u].group())
                    max_residual = std::max(max_residual, max_abs_diff(c.component, sent[u] * active[u].seq()));
            max_coeff_error = std::max(max_coeff_error, std::abs(recv[u] - sent[u]));
            const auto word_sent = streams[u].substr(k * qcfg.bits(), qcfg.bits());
            const auto word_recv = decode_level(recv[u], qcfg, tol);
            received[u] += word_recv;
            csv << "," << fmt12(sent[u]) << "," << fmt12(recv[u]) << "," << word_sent << "," << word_recv;
        }
        csv << "," << fmt12(energy) << "\n";
    }

    std::size_t bit_errors = 0;
    for (std::size_t u = 0; u < active.size(); ++u)
        for (std::size_t i = 0; i < streams[u].size(); ++i) bit_errors += streams[u][i] != received[u][i];

    json summary{{"case", session.rac.name()},
                 {"N", n},
                 {"b", qcfg.bits()},
                 {"M", peak},
                 {"seed", seed},
                 {"users", json::array()},
                 {"frames", frames.size()},
                 {"bits_per_user", streams.empty() ? 0 : streams.front().size()},
                 {"bit_errors", bit_errors},
                 {"max_residual", max_residual},
                 {"max_coefficient_error", max_coeff_error},
                 {"max_imaginary_part", max_imag},
                 {"energy_max", energy_max},
                 {"lossless", bit_errors == 0}};
    if (session.e_max) summary["e_max"] = *session.e_max;
    for (const auto& u : active) summary["users"].push_back({{"user_id", u.user_id()}, {"group", u.group()}});

    if (o.out.empty()) {
        std::cout << csv.str();
        std::cerr << summary.dump(2) << "\n";
    } else {
        std::filesystem::create_directories(o.out);
        write_text(o.out + "/frames.csv", csv.str());
        write_text(o.out + "/frames.json", frames_json.dump() + "\n");
        write_text(o.out + "/summary.json", summary.dump(2) + "\n");
        std::cout << summary.dump(2) << "\n";
    }
    return bit_errors == 0 ? 0 : exit_domain;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DFT eigensequence toolkit and multiuser real adder channel simulator"};
    app.require_subcommand(1);

    gen_options gen;
    auto* gen_cmd = app.add_subcommand("gen", "Construct eigensequences (even/odd constructions or a generated family)");
    auto* even_flag = gen_cmd->add_flag("--even", gen.even, "y = E{x} +/- E{X}, eigenvalue +/-1");
    auto* odd_flag = gen_cmd->add_flag("--odd", gen.odd, "y = O{x} -/+ j O{X}, eigenvalue +/-j");
    auto* family_flag = gen_cmd->add_flag("--family", gen.family, "g[n,m] family for m = 1..ceil(N/2)");
    even_flag->excludes(odd_flag)->excludes(family_flag);
    odd_flag->excludes(family_flag);
    gen_cmd->add_option("--sign", gen.sign, "+ or - (selects the eigenvalue sign)")->capture_default_str();
    auto* seq_opt = gen_cmd->add_option("--seq", gen.seq_path, "seed sequence JSON file")->check(CLI::ExistingFile);
    auto* rand_opt = gen_cmd->add_option("--random", gen.random_n, "length of a pseudorandom real seed")
                         ->check(CLI::PositiveNumber);
    seq_opt->excludes(rand_opt);
    gen_cmd->add_option("--seed,--rng", gen.seed, "RNG seed for --random")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file (default: standard output)");
    gen_cmd->add_option("--tol", gen.tol, "absolute per-sample tolerance")->capture_default_str();

    std::string verify_path;
    double verify_tol = 1e-9;
    auto* verify_cmd = app.add_subcommand("verify", "Classify a sequence and check its parity");
    verify_cmd->add_option("--seq", verify_path, "sequence JSON file")->required();
    verify_cmd->add_option("--tol", verify_tol, "absolute per-sample tolerance")->capture_default_str();

    std::string energy_path;
    double energy_emax = 0, energy_tol = 1e-9;
    auto* energy_cmd = app.add_subcommand("energy", "Peak coefficient M keeping the channel energy within E_max");
    energy_cmd->add_option("--seq", energy_path, "signatures: registry or list of sequences")->required();
    energy_cmd->add_option("--emax", energy_emax, "channel energy budget E_max")->required();
    energy_cmd->add_option("--tol", energy_tol, "absolute per-sample tolerance")->capture_default_str();

    std::string sched_path, sched_case;
    std::uint64_t sched_seed = 0;
    std::size_t sched_draws = 1;
    double sched_tol = 1e-9;
    auto* sched_cmd = app.add_subcommand("schedule", "Draw one user per group for successive channel uses");
    sched_cmd->add_option("--seq", sched_path, "signature registry JSON file")->required();
    sched_cmd->add_option("--case", sched_case, "2, 3/123, 3/124, 3/134, 3/234 or 4")->required();
    sched_cmd->add_option("--seed", sched_seed, "seed of draw 0; draw k uses seed + k")->capture_default_str();
    sched_cmd->add_option("--draws", sched_draws, "number of channel uses")->capture_default_str();
    sched_cmd->add_option("--tol", sched_tol, "absolute per-sample tolerance")->capture_default_str();

    simulate_options sim;
    auto* sim_cmd = app.add_subcommand(
        "simulate",
        "Transmit bitstreams over the t-user real adder channel and recover them.\n"
        "CSV columns: frame_index, y0..y{N-1} (real parts), then per active user\n"
        "a_sent_<id>, a_recv_<id>, word_sent_<id>, word_recv_<id>, and finally energy.\n"
        "Floats use 12 significant digits. With --out DIR, writes frames.csv,\n"
        "frames.json and summary.json; otherwise CSV goes to stdout, summary to stderr.");
    sim_cmd->add_option("--config", sim.config, "session config JSON file");
    sim_cmd->add_option("--seq", sim.registry, "signature registry (overrides config 'users')");
    sim_cmd->add_option("--case", sim.case_name, "channel case (overrides config)");
    sim_cmd->add_option("--bits", sim.bits, "bits per word b (overrides config)");
    sim_cmd->add_option("--emax", sim.e_max, "energy budget E_max (overrides config)");
    sim_cmd->add_option("--random-bits", sim.random_bits, "random bits per user when no bitstreams are given");
    sim_cmd->add_option("--seed", sim.seed, "seed for scheduling and random bitstreams");
    sim_cmd->add_option("--out", sim.out, "output directory");
    sim_cmd->add_option("--tol", sim.tol, "absolute per-sample tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_io;
    }

    try {
        if (*gen_cmd) {
            if (!gen.even && !gen.odd && !gen.family) throw invalid_input("gen needs one of --even, --odd, --family");
            if (gen.seq_path.empty() && gen.random_n == 0) throw invalid_input("gen needs --seq or --random");
            return run_gen(gen);
        }
        if (*verify_cmd) return run_verify(verify_path, verify_tol);
        if (*energy_cmd) return run_energy(energy_path, energy_emax, energy_tol);
        if (*sched_cmd) return run_schedule(sched_path, sched_case, sched_seed, sched_draws, sched_tol);
        if (*sim_cmd) return run_simulate(sim);
    } catch (const parse_error& e) {
        return report_error(e, exit_io);
    } catch (const std::filesystem::filesystem_error& e) {
        return report_error(e, exit_io);
    } catch (const dftis::error& e) {
        return report_error(e, exit_domain);
    } catch (const std::exception& e) {
        return report_error(e, exit_domain);
    }
    return 0;
}
