#include "cli.hpp"

#include "dvarma/common/seed.hpp"
#include "dvarma/eval/benchmark.hpp"
#include "dvarma/eval/evaluation.hpp"
#include "dvarma/io/reports.hpp"
#include "dvarma/io/serialize.hpp"
#include "dvarma/io/svg.hpp"
#include "dvarma/series/csv.hpp"
#include "dvarma/series/describe.hpp"
#include "dvarma/series/transforms.hpp"
#include "dvarma/stationarity/adf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dvarma::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using series::Panel;
using hybrid::ModelKind;
using Index = Eigen::Index;

const std::vector<std::string> kAllModels{"varma", "varmax", "lstm", "deepvarma-re", "deepvarma-en", "deepvarma"};
const std::set<std::string> kCliKeys{"endog", "exog", "log_columns", "protocol", "model", "models",
                                     "seed", "points", "cumulative"};

struct Args {
    std::string input;
    std::string config;
    std::string out_dir = ".";
    std::string file;
    std::string date_column = "date";
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string protocol;
    std::string model;
    std::vector<std::string> models;
    std::vector<std::string> endog;
    std::vector<std::string> exog;
    std::vector<std::string> log_columns;
    std::vector<int> points;
    std::vector<int> cumulative;
    std::string model_file;
    int h = 0;
    std::string spec_file;
    long T = 750;
    bool benchmark = false;
    std::vector<std::string> columns;
    std::string title;
};

/// Flag values merged over the config file.
struct Settings {
    hybrid::HybridConfig config;
    std::vector<std::string> endog;
    std::vector<std::string> exog;
    std::vector<std::string> log_columns;
    std::vector<std::string> models;
    std::string model = "deepvarma";
    std::string protocol = "non-stationary";
    eval::HorizonSpec horizon;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("DVARMA_SEED");
    if (!v || !*v) return std::nullopt;
    try {
        std::size_t pos = 0;
        const unsigned long long s = std::stoull(v, &pos);
        if (pos != std::string(v).size()) throw std::invalid_argument("trailing characters");
        return s;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("DVARMA_SEED is not an unsigned integer: ") + v);
    }
}

Settings resolve(const Args& a) {
    Settings s;
    std::optional<std::uint64_t> seed;
    if (!a.config.empty()) {
        const std::string text = read_file(a.config);
        io::apply_config_json(text, s.config, kCliKeys);
        json j;
        try {
            j = json::parse(text);
            if (j.contains("endog")) s.endog = j["endog"].get<std::vector<std::string>>();
            if (j.contains("exog")) s.exog = j["exog"].get<std::vector<std::string>>();
            if (j.contains("log_columns")) s.log_columns = j["log_columns"].get<std::vector<std::string>>();
            if (j.contains("protocol")) s.protocol = j["protocol"].get<std::string>();
            if (j.contains("model")) s.model = j["model"].get<std::string>();
            if (j.contains("models")) s.models = j["models"].get<std::vector<std::string>>();
            if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
            if (j.contains("points")) s.horizon.points = j["points"].get<std::vector<int>>();
            if (j.contains("cumulative")) s.horizon.cumulative = j["cumulative"].get<std::vector<int>>();
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
    }
    if (!a.endog.empty()) s.endog = a.endog;
    if (!a.exog.empty()) s.exog = a.exog;
    if (!a.log_columns.empty()) s.log_columns = a.log_columns;
    if (!a.protocol.empty()) s.protocol = a.protocol;
    if (!a.model.empty()) s.model = a.model;
    if (!a.models.empty()) s.models = a.models;
    if (!a.points.empty()) s.horizon.points = a.points;
    if (!a.cumulative.empty()) s.horizon.cumulative = a.cumulative;
    if (a.jobs) s.config.jobs = *a.jobs;

    if (s.protocol != "stationary" && s.protocol != "non-stationary") {
        throw std::invalid_argument("protocol must be stationary or non-stationary, got " + s.protocol);
    }
    s.config.differencing = s.protocol == "stationary";

    if (a.seed) {
        seed = a.seed;
    } else if (!seed) {
        seed = env_seed();
    }
    if (seed) {
        const std::uint64_t ps = derive_seed(*seed, "predictor");
        const std::uint64_t es = derive_seed(*seed, "encoder");
        s.config.predictor.seed = ps;
        s.config.encoder.seed = es;
        for (auto& g : s.config.predictor_grid) g.seed = ps;
        for (auto& g : s.config.encoder_grid) g.seed = es;
    }
    return s;
}

struct Data {
    Panel endog;
    std::optional<Panel> exog;
    series::SplitSizes split;
    [[nodiscard]] Index fit_rows() const { return split.train + split.val; }
    [[nodiscard]] const Panel* exog_ptr() const { return exog ? &*exog : nullptr; }
};

Data load_data(const Args& a, const Settings& s) {
    Panel raw = series::impute_linear(series::load_panel_file(a.input, a.date_column));
    if (!s.log_columns.empty()) raw = series::log_transform(raw, s.log_columns);
    for (const auto& x : s.exog) {
        if (std::find(s.endog.begin(), s.endog.end(), x) != s.endog.end()) {
            throw std::invalid_argument("column " + x + " is listed as both endogenous and exogenous");
        }
    }
    std::vector<std::string> endog = s.endog;
    if (endog.empty()) {
        for (const auto& c : raw.columns()) {
            if (std::find(s.exog.begin(), s.exog.end(), c) == s.exog.end()) endog.push_back(c);
        }
    }
    if (endog.empty()) throw std::invalid_argument("no endogenous columns");
    Data d;
    d.endog = raw.select(endog);
    if (!s.exog.empty()) d.exog = raw.select(s.exog);
    d.split = series::split_sizes(raw.rows(), {});
    return d;
}

/// Columns used by stats and adf: endogenous then exogenous.
Panel all_columns(const Data& d) {
    if (!d.exog) return d.endog;
    std::vector<std::string> names = d.endog.columns();
    names.insert(names.end(), d.exog->columns().begin(), d.exog->columns().end());
    Eigen::MatrixXd v(d.endog.rows(), d.endog.cols() + d.exog->cols());
    v << d.endog.values(), d.exog->values();
    return Panel(d.endog.timestamps(), std::move(names), std::move(v));
}

bool applicable(ModelKind kind, const Settings& s, const Data& d) {
    if (kind == ModelKind::Lstm && s.protocol == "stationary") return false;
    if (hybrid::uses_exog(kind) && !d.exog) return false;
    return true;
}

hybrid::HybridModel fit_on_range(ModelKind kind, const Data& d, const Settings& s) {
    if (!applicable(kind, s, d)) {
        throw std::invalid_argument("model " + std::string(hybrid::to_string(kind)) +
                                    " is not applicable under the " + s.protocol +
                                    " protocol with the given columns");
    }
    const Index n = d.fit_rows();
    const Panel endog = d.endog.slice_rows(0, n);
    std::optional<Panel> exog;
    if (d.exog) exog = d.exog->slice_rows(0, n);
    return hybrid::fit(kind, endog, exog ? &*exog : nullptr, s.config);
}

fs::path output_path(const Args& a, const std::string& default_name) {
    return fs::path(a.out_dir) / (a.file.empty() ? default_name : a.file);
}

void emit(std::ostream& out, const fs::path& p, const std::string& content) {
    io::write_text_file(p, content);
    out << "wrote " << p.string() << '\n';
}

template <typename F>
std::string to_text(F&& write) {
    std::ostringstream ss;
    write(ss);
    return ss.str();
}

std::vector<std::string> model_list(const Settings& s) { return s.models.empty() ? kAllModels : s.models; }

struct Fitted {
    std::string name;
    std::shared_ptr<const hybrid::HybridModel> model;  ///< null when inapplicable
};

std::vector<Fitted> fit_models(const Data& d, const Settings& s, std::ostream& out) {
    std::vector<Fitted> fitted;
    for (const auto& name : model_list(s)) {
        const ModelKind kind = hybrid::parse_model_kind(name);
        Fitted f{name, nullptr};
        if (applicable(kind, s, d)) {
            f.model = std::make_shared<const hybrid::HybridModel>(fit_on_range(kind, d, s));
            for (const auto& w : f.model->warnings) out << name << ": " << w << '\n';
        }
        fitted.push_back(std::move(f));
    }
    return fitted;
}

std::vector<eval::NamedForecaster> forecasters(const std::vector<Fitted>& fitted) {
    std::vector<eval::NamedForecaster> out;
    for (const auto& f : fitted) {
        std::shared_ptr<const eval::Forecaster> fc;
        if (f.model) fc = std::make_shared<const eval::HybridForecaster>(f.model);
        out.push_back({f.name, fc});
    }
    return out;
}

/// Test-range panel of actual values followed by one "<series>:<model>" column per prediction.
Panel predictions_panel(const Data& d, const std::vector<Fitted>& fitted) {
    const Index t0 = d.fit_rows();
    const Index n = d.endog.rows() - t0;
    const Panel test = d.endog.slice_rows(t0, n);
    std::vector<std::string> names = test.columns();
    std::vector<Eigen::MatrixXd> blocks{test.values()};
    const Eigen::MatrixXd* X = d.exog ? &d.exog->values() : nullptr;
    for (const auto& f : fitted) {
        if (!f.model) continue;
        const eval::HybridForecaster fc(f.model);
        blocks.push_back(eval::rolling_one_step(fc, d.endog.values(), X, t0));
        for (const auto& c : test.columns()) names.push_back(c + ":" + f.name);
    }
    Eigen::MatrixXd v(n, static_cast<Index>(names.size()));
    Index c = 0;
    for (const auto& b : blocks) {
        v.middleCols(c, b.cols()) = b;
        c += b.cols();
    }
    return Panel(test.timestamps(), std::move(names), std::move(v));
}

json fit_report(const hybrid::HybridModel& m, const Data& d, const Settings& s) {
    json r;
    r["model"] = std::string(hybrid::to_string(m.kind));
    r["protocol"] = s.protocol;
    r["endog"] = m.endog_names;
    r["exog"] = m.exog_names;
    r["rows"] = {{"train", d.split.train}, {"val", d.split.val}, {"test", d.split.test}};
    if (m.statistical) {
        const auto& st = *m.statistical;
        r["statistical"] = {{"p", st.spec.p},
                            {"q", st.spec.q},
                            {"s", st.spec.s},
                            {"exog_dim", st.spec.exog_dim},
                            {"intercept", st.spec.intercept},
                            {"log_likelihood", st.log_likelihood},
                            {"init_log_likelihood", st.init_log_likelihood},
                            {"aic", st.aic},
                            {"k_params", st.k_params},
                            {"iterations", st.convergence.iterations},
                            {"stop_reason", st.convergence.stop_reason}};
    } else {
        r["statistical"] = nullptr;
    }
    const auto lstm_json = [](const std::optional<neural::TrainedLstm>& t) -> json {
        if (!t) return nullptr;
        json o = {{"hidden_dim", t->config.hidden_dim},
                  {"learning_rate", t->config.learning_rate},
                  {"epochs", t->config.epochs},
                  {"selected_epoch", t->selected_epoch}};
        o["final_train_loss"] = t->train_loss.empty() ? json(nullptr) : json(t->train_loss.back());
        o["final_val_loss"] = t->val_loss.empty() ? json(nullptr) : json(t->val_loss.back());
        return o;
    };
    r["predictor"] = lstm_json(m.predictor);
    r["encoder"] = lstm_json(m.encoder);
    r["kept_dims"] = m.kept_dims;
    r["stat_start"] = m.stat_start;
    r["warnings"] = m.warnings;
    return r;
}

// subcommands

int cmd_stats(const Args& a, std::ostream& out) {
    const Settings s = resolve(a);
    const Panel p = all_columns(load_data(a, s));
    emit(out, fs::path(a.out_dir) / "stats.csv",
         to_text([&](std::ostream& o) { io::write_stats_csv(o, series::descriptive_stats(p)); }));
    const Eigen::MatrixXd R = series::correlation_matrix(p);
    std::ostringstream ss;
    ss << "series";
    for (const auto& c : p.columns()) ss << ',' << c;
    ss << '\n';
    for (Index i = 0; i < R.rows(); ++i) {
        ss << p.columns()[static_cast<std::size_t>(i)];
        for (Index j = 0; j < R.cols(); ++j) ss << ',' << series::format_double(R(i, j));
        ss << '\n';
    }
    emit(out, fs::path(a.out_dir) / "correlation.csv", ss.str());
    return 0;
}

int cmd_adf(const Args& a, std::ostream& out) {
    const Settings s = resolve(a);
    const auto rep = stationarity::stationarity_report(all_columns(load_data(a, s)));
    emit(out, fs::path(a.out_dir) / "stationarity.csv",
         to_text([&](std::ostream& o) { io::write_stationarity_csv(o, rep); }));
    emit(out, fs::path(a.out_dir) / "stationarity.json", io::stationarity_json(rep) + "\n");
    return 0;
}

int cmd_fit(const Args& a, std::ostream& out) {
    const Settings s = resolve(a);
    const Data d = load_data(a, s);
    const hybrid::HybridModel m = fit_on_range(hybrid::parse_model_kind(s.model), d, s);
    for (const auto& w : m.warnings) out << "warning: " << w << '\n';
    emit(out, output_path(a, "model.json"), io::to_json(m) + "\n");
    emit(out, fs::path(a.out_dir) / "fit_report.json", fit_report(m, d, s).dump(2) + "\n");
    return 0;
}

int cmd_forecast(const Args& a, std::ostream& out) {
    const hybrid::HybridModel m = io::hybrid_model_from_json(read_file(a.model_file));
    Settings s = resolve(a);
    s.endog = m.endog_names;
    s.exog = m.exog_names;
    const Data d = load_data(a, s);
    const Eigen::MatrixXd* X = hybrid::uses_exog(m.kind) && d.exog ? &d.exog->values() : nullptr;
    const hybrid::HybridForecast f = m.forecast_from(d.endog.values(), X, a.h);
    const series::Date last = d.endog.timestamps().back();
    std::vector<series::Date> dates;
    for (int k = 1; k <= a.h; ++k) dates.push_back(std::chrono::sys_days(last) + std::chrono::days(k));
    std::vector<std::string> names;
    for (const auto& c : m.endog_names) names.push_back(c);
    for (const auto& c : m.endog_names) names.push_back(c + "_mu");
    for (const auto& c : m.endog_names) names.push_back(c + "_e_hat");
    Eigen::MatrixXd v(a.h, 3 * f.y_hat.cols());
    v << f.y_hat, f.mu, f.e_hat;
    const Panel p(std::move(dates), std::move(names), std::move(v));
    emit(out, output_path(a, "forecast.csv"), to_text([&](std::ostream& o) { series::write_panel(o, p); }));
    return 0;
}

int cmd_eval(const Args& a, std::ostream& out) {
    Settings s = resolve(a);
    std::shared_ptr<const hybrid::HybridModel> model;
    if (!a.model_file.empty()) {
        auto m = std::make_shared<hybrid::HybridModel>(io::hybrid_model_from_json(read_file(a.model_file)));
        s.endog = m->endog_names;
        s.exog = m->exog_names;
        s.model = std::string(hybrid::to_string(m->kind));
        model = std::move(m);
    }
    const Data d = load_data(a, s);
    if (!model) model = std::make_shared<const hybrid::HybridModel>(fit_on_range(hybrid::parse_model_kind(s.model), d, s));
    const std::vector<Fitted> fitted{{s.model, model}};
    const auto rep = eval::compare(forecasters(fitted), d.endog, d.exog_ptr(), d.fit_rows(), s.protocol);
    emit(out, fs::path(a.out_dir) / "eval.csv", to_text([&](std::ostream& o) { io::write_comparison_csv(o, rep); }));
    emit(out, fs::path(a.out_dir) / "eval.json", io::comparison_json(rep) + "\n");
    const Panel pred = predictions_panel(d, fitted);
    emit(out, fs::path(a.out_dir) / "predictions.csv", to_text([&](std::ostream& o) { series::write_panel(o, pred); }));
    return 0;
}

int cmd_horizon(const Args& a, std::ostream& out) {
    const Settings s = resolve(a);
    const Data d = load_data(a, s);
    const auto fitted = fit_models(d, s, out);
    const auto table = eval::horizon_eval(forecasters(fitted), d.endog, d.exog_ptr(), d.fit_rows(), s.horizon);
    emit(out, fs::path(a.out_dir) / "horizon.csv", to_text([&](std::ostream& o) { io::write_horizon_csv(o, table); }));
    for (std::size_t k = 0; k < table.series.size(); ++k) {
        emit(out, fs::path(a.out_dir) / ("horizon_" + table.series[k] + ".csv"),
             to_text([&](std::ostream& o) { io::write_horizon_csv(o, table, static_cast<int>(k)); }));
    }
    emit(out, fs::path(a.out_dir) / "horizon.json", io::horizon_json(table) + "\n");
    return 0;
}

int cmd_compare(const Args& a, std::ostream& out) {
    const Settings s = resolve(a);
    const Data d = load_data(a, s);
    const auto fitted = fit_models(d, s, out);
    const auto rep = eval::compare(forecasters(fitted), d.endog, d.exog_ptr(), d.fit_rows(), s.protocol);
    emit(out, fs::path(a.out_dir) / "comparison.csv",
         to_text([&](std::ostream& o) { io::write_comparison_csv(o, rep); }));
    emit(out, fs::path(a.out_dir) / "comparison.json", io::comparison_json(rep) + "\n");
    const Panel pred = predictions_panel(d, fitted);
    emit(out, fs::path(a.out_dir) / "predictions.csv", to_text([&](std::ostream& o) { series::write_panel(o, pred); }));
    return 0;
}

int cmd_simulate(const Args& a, std::ostream& out) {
    std::optional<std::uint64_t> seed = a.seed;
    if (!seed) seed = env_seed();
    const std::uint64_t sd = seed.value_or(0);
    Panel p;
    if (a.benchmark) {
        eval::BenchmarkOptions o;
        o.T = a.T;
        o.seed = sd;
        p = eval::make_benchmark(o);
    } else {
        if (a.spec_file.empty()) throw std::invalid_argument("simulate needs --spec or --benchmark");
        const io::ModelDescription desc = io::model_description_from_json(read_file(a.spec_file));
        std::optional<Panel> exog;
        if (desc.spec.has_exog()) {
            if (a.input.empty() || a.exog.empty()) {
                throw std::invalid_argument("a model with exogenous input needs an input CSV and --exog");
            }
            exog = series::impute_linear(series::load_panel_file(a.input, a.date_column)).select(a.exog);
            if (exog->rows() < a.T) throw std::invalid_argument("exogenous input shorter than --T");
        }
        varma::SimulationOptions so;
        so.seed = derive_seed(sd, "simulate");
        if (exog) so.start = exog->timestamps().front();
        p = varma::simulate(desc.spec, desc.params, a.T, so, exog ? &exog->values() : nullptr);
        if (!a.endog.empty()) {
            if (a.endog.size() != static_cast<std::size_t>(p.cols())) {
                throw std::invalid_argument("--endog names must match the model dimension");
            }
            p = Panel(p.timestamps(), a.endog, p.values());
        }
    }
    emit(out, output_path(a, "simulated.csv"), to_text([&](std::ostream& o) { series::write_panel(o, p); }));
    return 0;
}

int cmd_plot(const Args& a, std::ostream& out) {
    const Panel p = series::load_panel_file(a.input, a.date_column);
    const std::vector<std::string> cols = a.columns.empty() ? p.columns() : a.columns;
    std::vector<io::PlotSeries> set;
    for (const auto& c : cols) {
        const Eigen::VectorXd v = p.column(c);
        set.push_back({c, p.timestamps(), std::vector<double>(v.data(), v.data() + v.size())});
    }
    const std::string title = a.title.empty() ? fs::path(a.input).stem().string() : a.title;
    emit(out, output_path(a, "plot.svg"), io::render_svg(set, title));
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multivariate time-series forecasting with VARMA, LSTM and hybrid models", "dvarma"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    Args a;

    const auto common = [&](CLI::App* c, bool needs_input) {
        auto* in = c->add_option("input", a.input, "Input CSV (first column ISO dates)");
        if (needs_input) in->required();
        c->add_option("--config", a.config, "JSON config file; flags override its values");
        c->add_option("--out", a.out_dir, "Existing output directory")->capture_default_str();
        c->add_option("--date-column", a.date_column, "Name of the date column")->capture_default_str();
        c->add_option("--seed", a.seed, "Base seed (default: DVARMA_SEED or config)");
        c->add_option("--jobs", a.jobs, "Worker threads for order and grid search")->check(CLI::PositiveNumber);
        c->add_option("--endog", a.endog, "Endogenous columns")->delimiter(',');
        c->add_option("--exog", a.exog, "Exogenous columns")->delimiter(',');
        c->add_option("--log", a.log_columns, "Columns to log-transform")->delimiter(',');
        c->add_option("--protocol", a.protocol, "stationary or non-stationary")
            ->check(CLI::IsMember({"stationary", "non-stationary"}));
    };
    const auto model_opt = [&](CLI::App* c) {
        c->add_option("--model", a.model, "Model kind")->check(CLI::IsMember(kAllModels));
    };
    const auto models_opt = [&](CLI::App* c) {
        c->add_option("--models", a.models, "Models to evaluate")->delimiter(',')->check(CLI::IsMember(kAllModels));
    };

    auto* stats = app.add_subcommand("stats", "Descriptive statistics and correlation matrix");
    common(stats, true);
    auto* adf = app.add_subcommand("adf", "ADF p-values before and after differencing");
    common(adf, true);
    auto* fit = app.add_subcommand("fit", "Fit a model on the train+validation range and save it");
    common(fit, true);
    model_opt(fit);
    fit->add_option("--file", a.file, "Model file name inside --out (default model.json)");
    auto* fc = app.add_subcommand("forecast", "Forecast h steps after the input with a saved model");
    common(fc, true);
    fc->add_option("--model-file", a.model_file, "Saved model")->required();
    fc->add_option("--horizon", a.h, "Forecast steps")->required()->check(CLI::PositiveNumber);
    fc->add_option("--file", a.file, "Output file name inside --out (default forecast.csv)");
    auto* ev = app.add_subcommand("eval", "Rolling one-step test metrics of one model");
    common(ev, true);
    model_opt(ev);
    ev->add_option("--model-file", a.model_file, "Evaluate a saved model instead of fitting");
    auto* hz = app.add_subcommand("horizon", "Rolling-origin MSE by forecast horizon");
    common(hz, true);
    models_opt(hz);
    hz->add_option("--points", a.points, "Point horizons")->delimiter(',')->check(CLI::PositiveNumber);
    hz->add_option("--cumulative", a.cumulative, "Cumulative horizons 1:a")->delimiter(',')->check(CLI::PositiveNumber);
    auto* cmp = app.add_subcommand("compare", "Test metrics of several models");
    common(cmp, true);
    models_opt(cmp);
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic panel");
    common(sim, false);
    sim->add_option("--spec", a.spec_file, "Model description JSON");
    sim->add_flag("--benchmark", a.benchmark, "Generate the built-in benchmark panel");
    sim->add_option("--T", a.T, "Sample length")->capture_default_str()->check(CLI::PositiveNumber);
    sim->add_option("--file", a.file, "Output file name inside --out (default simulated.csv)");
    auto* plot = app.add_subcommand("plot", "Line chart of CSV columns as SVG");
    common(plot, true);
    plot->add_option("--columns", a.columns, "Columns to draw (default all)")->delimiter(',');
    plot->add_option("--title", a.title, "Chart title");
    plot->add_option("--file", a.file, "Output file name inside --out (default plot.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*stats) return cmd_stats(a, out);
        if (*adf) return cmd_adf(a, out);
        if (*fit) return cmd_fit(a, out);
        if (*fc) return cmd_forecast(a, out);
        if (*ev) return cmd_eval(a, out);
        if (*hz) return cmd_horizon(a, out);
        if (*cmp) return cmd_compare(a, out);
        if (*sim) return cmd_simulate(a, out);
        if (*plot) return cmd_plot(a, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace dvarma::cli
