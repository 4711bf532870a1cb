// specpred command-line interface: kernel synthesis, signal generation,
// prediction and the sweep/robustness/truncation experiments, driven by
// flat key-value config files.  Exit codes: 0 success, 2 validation
// failure, 3 dynamic-range/causality failure, 4 sweep with no usable row.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specpred/specpred.hpp"

namespace sp = specpred;
namespace fs = std::filesystem;

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

sp::Metadata make_metadata(const sp::ExperimentConfig& cfg, const std::string& command) {
    sp::Metadata meta;
    meta.emplace_back("command", command);
    meta.emplace_back("version", sp::version_string());
    meta.emplace_back("timestamp", iso_timestamp());
    for (auto& kv : cfg.resolved_metadata()) meta.push_back(std::move(kv));
    return meta;
}

struct OutputPlan {
    fs::path dir;
    std::string id;
    bool csv = true, json = false, text = true;
};

OutputPlan output_plan(const sp::ExperimentConfig& cfg, const std::string& command) {
    OutputPlan plan;
    plan.dir = cfg.get("output.dir");
    plan.id = cfg.get("output.id").empty() ? command : cfg.get("output.id");
    plan.csv = plan.json = plan.text = false;
    for (const std::string& f : cfg.get_strings("output.formats")) {
        if (f == "csv") plan.csv = true;
        else if (f == "json") plan.json = true;
        else if (f == "text") plan.text = true;
        else throw sp::validation_error("config: unknown output format '" + f + "'");
    }
    if (!plan.csv && !plan.json && !plan.text)
        throw sp::validation_error("config: output.formats selects nothing");
    return plan;
}

template <class WriteFn>
fs::path write_file(const OutputPlan& plan, const std::string& suffix, WriteFn&& fn) {
    fs::create_directories(plan.dir);
    const fs::path path = plan.dir / (plan.id + suffix);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw sp::io_error("cannot open output file " + path.string());
    fn(os);
    return path;
}

int cmd_kernel(const sp::ExperimentConfig& cfg) {
    const sp::PredictorParams p = cfg.predictor();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "kernel");
    const auto meta = make_metadata(cfg, "kernel");

    const sp::AnyKernel k = sp::build_kernel_auto(p, rc.fft_size, rc.truncation);
    const sp::FrequencyGrid grid(rc.grid_size);
    const double kap = sp::kappa(p, grid);
    const double psi1 = sp::psi(p, 1, grid), psi2 = sp::psi(p, 2, grid);

    fs::path file;
    if (plan.json)
        file = write_file(plan, "_kernel.json",
                          [&](std::ostream& os) { sp::write_kernel_json(os, k, meta); });
    if (plan.csv || plan.text)
        file = write_file(plan, "_kernel.txt",
                          [&](std::ostream& os) { sp::write_kernel_text(os, k, meta); });

    std::printf("kernel: alpha=%.17g kappa=%.17g psi_rho1=%.17g psi_rho2=%.17g "
                "causality_defect=%.3g tail_bound=%.3g T=%d file=%s\n",
                sp::kernel_alpha(k), kap, psi1, psi2, sp::kernel_causality_defect(k),
                sp::kernel_tail_bound(k), sp::kernel_truncation(k), file.string().c_str());
    return 0;
}

int cmd_gen(const sp::ExperimentConfig& cfg) {
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "gen");
    const auto meta = make_metadata(cfg, "gen");

    const sp::ResolvedSignal sig = sp::resolve(spec, rc.t0, rc.t0 + rc.window - 1);

    fs::path file;
    if (plan.json)
        file = write_file(plan, "_series.json",
                          [&](std::ostream& os) { sp::write_series_json(os, sig.series, meta); });
    if (plan.csv || plan.text)
        file = write_file(plan, "_series.txt",
                          [&](std::ostream& os) { sp::write_series_text(os, sig.series, meta); });

    std::printf("gen: kind=%s n=%zu linf=%.17g lines=%zu file=%s\n", sp::to_string(spec.kind),
                sig.series.size(), sig.series.linf(), sig.lines.size(), file.string().c_str());
    return 0;
}

int cmd_predict(const sp::ExperimentConfig& cfg) {
    const sp::PredictorParams p = cfg.predictor();
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "predict");
    const auto meta = make_metadata(cfg, "predict");

    const sp::AnyKernel k = sp::build_kernel_auto(p, rc.fft_size, rc.truncation);
    const int memory = sp::resolve_memory(k, rc);
    const sp::ResolvedSignal sig = sp::resolve(spec, rc.t0, rc.t0 + rc.window - 1);
    const sp::PredictionRun run = sp::predict(sig.series, k, memory);
    const sp::ErrorStats st = sp::error_stats(run);

    const fs::path file = write_file(
        plan, "_prediction.txt", [&](std::ostream& os) { sp::write_prediction_text(os, run, meta); });

    std::printf("predict: linf_error=%.17g rms_error=%.17g M=%d valid=[%lld,%lld] file=%s\n",
                st.linf, st.rms, memory, (long long)run.valid_t0(), (long long)run.valid_t1(),
                file.string().c_str());
    return 0;
}

int cmd_sweep(const sp::ExperimentConfig& cfg) {
    const sp::PredictorParams p = cfg.predictor();
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto gammas = cfg.gamma_list();
    const auto plan = output_plan(cfg, "sweep");

    sp::SweepReport rep = sp::gamma_sweep(spec, gammas, p, rc);
    rep.metadata = make_metadata(cfg, "sweep");

    fs::path file;
    if (plan.csv || plan.text)
        file = write_file(plan, "_sweep.csv",
                          [&](std::ostream& os) { sp::write_sweep_csv(os, rep); });
    if (plan.json)
        file = write_file(plan, "_sweep.json",
                          [&](std::ostream& os) { sp::write_sweep_json(os, rep); });

    std::size_t ok = 0;
    for (const auto& r : rep.rows)
        if (r.time_domain) ++ok;
    std::printf("sweep: rows=%zu time_domain_rows=%zu file=%s\n", rep.rows.size(), ok,
                file.string().c_str());
    return (!rep.rows.empty() && ok == 0) ? 4 : 0;
}

int cmd_robust(const sp::ExperimentConfig& cfg) {
    const sp::PredictorParams p = cfg.predictor();
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "robust");

    sp::RobustnessReport rep =
        sp::robustness_sweep(spec, cfg.get_list("run.nus"), cfg.get_double("predictor.gamma"), p, rc);
    rep.metadata = make_metadata(cfg, "robust");

    fs::path file;
    if (plan.csv || plan.text)
        file = write_file(plan, "_robust.csv",
                          [&](std::ostream& os) { sp::write_robustness_csv(os, rep); });
    if (plan.json)
        file = write_file(plan, "_robust.json",
                          [&](std::ostream& os) { sp::write_robustness_json(os, rep); });

    std::size_t bad = 0;
    for (const auto& r : rep.rows)
        if (r.bound_violated) ++bad;
    std::printf("robust: rows=%zu bound_violations=%zu file=%s\n", rep.rows.size(), bad,
                file.string().c_str());
    return 0;
}

int cmd_truncate(const sp::ExperimentConfig& cfg) {
    const sp::PredictorParams p = cfg.predictor();
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "truncate");

    std::vector<int> memories;
    for (double m : cfg.get_list("run.memories")) memories.push_back(int(m));
    sp::TruncationReport rep =
        sp::truncation_study(spec, cfg.get_double("predictor.gamma"), memories, p, rc);
    rep.metadata = make_metadata(cfg, "truncate");

    fs::path file;
    if (plan.csv || plan.text)
        file = write_file(plan, "_truncate.csv",
                          [&](std::ostream& os) { sp::write_truncation_csv(os, rep); });
    if (plan.json)
        file = write_file(plan, "_truncate.json",
                          [&](std::ostream& os) { sp::write_truncation_json(os, rep); });

    std::printf("truncate: rows=%zu file=%s\n", rep.rows.size(), file.string().c_str());
    return 0;
}

int cmd_diagnose(const sp::ExperimentConfig& cfg) {
    const sp::SpectrumSpec spec = cfg.signal();
    const sp::RunConfig rc = cfg.run();
    const auto plan = output_plan(cfg, "diagnose");
    const auto meta = make_metadata(cfg, "diagnose");

    const sp::ResolvedSignal sig = sp::resolve(spec, rc.t0, rc.t0 + rc.window - 1);
    const sp::FrequencyGrid grid(rc.grid_size);
    const double windowed = sp::class_diagnostic(sig.series, rc.weight, grid);
    const double exact = sp::class_diagnostic(sig.lines, rc.weight);

    const fs::path file = write_file(plan, "_diagnose.csv", [&](std::ostream& os) {
        os << "# specpred diagnose v1\n";
        for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
        os << "estimator,value\n";
        os << "windowed," << sp::fmt17(windowed) << "\n";
        os << "exact_lines," << sp::fmt17(exact) << "\n";
    });

    std::printf("diagnose: estimate=%.17g exact_lines=%.17g c=%.17g q=%.17g file=%s\n", windowed,
                exact, rc.weight.c, rc.weight.q, file.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-step-ahead predictors for processes with high-frequency energy decay"};
    app.set_version_flag("--version", sp::version_string());
    app.require_subcommand(1);

    std::string config_path, out_dir, format;
    long long seed = -1;

    const char* names[] = {"kernel", "gen", "predict", "sweep", "robust", "truncate", "diagnose"};
    const char* descs[] = {"synthesize a predictor kernel and write its record",
                           "generate a test signal",
                           "run one-step prediction on the configured signal",
                           "gamma sweep with error and bound columns",
                           "noise-robustness sweep over run.nus",
                           "memory-truncation study over run.memories",
                           "class-membership diagnostic of the configured signal"};
    for (int i = 0; i < 7; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "flat key-value config file");
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "signal seed (overrides signal.seed)");
        sub->add_option("--format", format, "csv|json|text (overrides output.formats)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        sp::ExperimentConfig cfg =
            config_path.empty() ? sp::ExperimentConfig() : sp::ExperimentConfig::from_file(config_path);
        if (!out_dir.empty()) cfg.set("output.dir", out_dir);
        if (seed >= 0) cfg.set("signal.seed", std::to_string(seed));
        if (!format.empty()) cfg.set("output.formats", format);

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "kernel") return cmd_kernel(cfg);
        if (cmd == "gen") return cmd_gen(cfg);
        if (cmd == "predict") return cmd_predict(cfg);
        if (cmd == "sweep") return cmd_sweep(cfg);
        if (cmd == "robust") return cmd_robust(cfg);
        if (cmd == "truncate") return cmd_truncate(cfg);
        if (cmd == "diagnose") return cmd_diagnose(cfg);
        return 2;
    } catch (const sp::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sp::noncausal_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sp::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sp::window_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sp::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
