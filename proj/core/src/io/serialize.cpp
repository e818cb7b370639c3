#include "dvarma/io/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dvarma::io {

using nlohmann::json;
using Index = Eigen::Index;

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double read_number(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

json matrix_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < M.cols(); ++c) row.push_back(number(M(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd read_matrix(const json& j, Index cols_if_empty = 0) {
    if (!j.is_array()) throw std::invalid_argument("expected a matrix (array of rows)");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = rows > 0 ? static_cast<Index>(j[0].size()) : cols_if_empty;
    Eigen::MatrixXd M(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
        for (Index c = 0; c < cols; ++c) M(r, c) = read_number(row[static_cast<std::size_t>(c)]);
    }
    return M;
}

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
    return a;
}

Eigen::VectorXd read_vector(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array");
    Eigen::VectorXd v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = read_number(j[i]);
    return v;
}

json matrices_json(const std::vector<Eigen::MatrixXd>& list) {
    json a = json::array();
    for (const auto& M : list) a.push_back(matrix_json(M));
    return a;
}

std::vector<Eigen::MatrixXd> read_matrices(const json& j, Index rows, Index cols) {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& e : j) {
        Eigen::MatrixXd M = read_matrix(e, cols);
        if (M.rows() != rows || M.cols() != cols) throw std::invalid_argument("coefficient matrix has the wrong shape");
        out.push_back(std::move(M));
    }
    return out;
}

json spec_json(const varma::VarmaSpec& s) {
    return {{"m", s.m},         {"p", s.p},
            {"q", s.q},         {"s", s.s},
            {"exog_dim", s.exog_dim}, {"intercept", s.intercept},
            {"allow_trivial", s.allow_trivial}};
}

varma::VarmaSpec read_spec(const json& j) {
    varma::VarmaSpec s;
    s.m = j.at("m").get<int>();
    s.p = j.value("p", 0);
    s.q = j.value("q", 0);
    s.s = j.value("s", 0);
    s.exog_dim = j.value("exog_dim", 0);
    s.intercept = j.value("intercept", false);
    s.allow_trivial = j.value("allow_trivial", false);
    s.validate();
    return s;
}

json params_json(const varma::VarmaParams& p) {
    return {{"phi", matrices_json(p.phi)},
            {"theta", matrices_json(p.theta)},
            {"gamma", matrices_json(p.gamma)},
            {"intercept", vector_json(p.intercept)},
            {"sigma_factor", matrix_json(p.sigma_factor)}};
}

varma::VarmaParams read_params(const json& j, const varma::VarmaSpec& s) {
    varma::VarmaParams p;
    p.phi = read_matrices(j.value("phi", json::array()), s.m, s.m);
    p.theta = read_matrices(j.value("theta", json::array()), s.m, s.m);
    p.gamma = read_matrices(j.value("gamma", json::array()), s.m, s.exog_dim);
    p.intercept = read_vector(j.value("intercept", json::array()));
    p.sigma_factor = read_matrix(j.at("sigma_factor"), s.m);
    p.check_shapes(s);
    return p;
}

json fitted_json(const varma::FittedVarma& f) {
    json dates = json::array();
    for (const auto& d : f.residuals.timestamps()) dates.push_back(series::format_date(d));
    return {{"spec", spec_json(f.spec)},
            {"params", params_json(f.params)},
            {"log_likelihood", number(f.log_likelihood)},
            {"aic", number(f.aic)},
            {"k_params", f.k_params},
            {"init_log_likelihood", number(f.init_log_likelihood)},
            {"likelihood_start", f.likelihood_start},
            {"convergence",
             {{"iterations", f.convergence.iterations},
              {"gradient_norm", number(f.convergence.gradient_norm)},
              {"converged", f.convergence.converged},
              {"stop_reason", f.convergence.stop_reason}}},
            {"residuals",
             {{"columns", f.residuals.columns()}, {"dates", dates}, {"values", matrix_json(f.residuals.values())}}},
            {"y_tail", matrix_json(f.y_tail)},
            {"exog_tail", matrix_json(f.exog_tail)}};
}

varma::FittedVarma read_fitted(const json& j) {
    varma::FittedVarma f;
    f.spec = read_spec(j.at("spec"));
    f.params = read_params(j.at("params"), f.spec);
    f.log_likelihood = read_number(j.at("log_likelihood"));
    f.aic = read_number(j.at("aic"));
    f.k_params = j.at("k_params").get<int>();
    f.init_log_likelihood = read_number(j.value("init_log_likelihood", json(nullptr)));
    f.likelihood_start = j.value("likelihood_start", 0);
    if (j.contains("convergence")) {
        const json& c = j["convergence"];
        f.convergence.iterations = c.value("iterations", 0);
        f.convergence.gradient_norm = read_number(c.value("gradient_norm", json(nullptr)));
        f.convergence.converged = c.value("converged", false);
        f.convergence.stop_reason = c.value("stop_reason", std::string());
    }
    if (j.contains("residuals")) {
        const json& r = j["residuals"];
        std::vector<series::Date> dates;
        for (const auto& d : r.at("dates")) dates.push_back(series::parse_date(d.get<std::string>()));
        f.residuals = series::Panel(std::move(dates), r.at("columns").get<std::vector<std::string>>(),
                                    read_matrix(r.at("values"), f.spec.m));
    }
    f.y_tail = read_matrix(j.value("y_tail", json::array()), f.spec.m);
    f.exog_tail = read_matrix(j.value("exog_tail", json::array()), f.spec.exog_dim);
    return f;
}

std::string activation_name(neural::Activation a) { return a == neural::Activation::Tanh ? "tanh" : "relu"; }

neural::Activation parse_activation(const std::string& s) {
    if (s == "tanh") return neural::Activation::Tanh;
    if (s == "relu") return neural::Activation::Relu;
    throw std::invalid_argument("unknown activation: " + s);
}

std::string selection_name(neural::EarlySelection e) {
    return e == neural::EarlySelection::BestVal ? "best-val" : "final";
}

neural::EarlySelection parse_selection(const std::string& s) {
    if (s == "best-val") return neural::EarlySelection::BestVal;
    if (s == "final") return neural::EarlySelection::Final;
    throw std::invalid_argument("unknown early selection: " + s);
}

json lstm_config_json(const neural::LstmConfig& c) {
    return {{"input_dim", c.input_dim},       {"hidden_dim", c.hidden_dim},
            {"output_dim", c.output_dim},     {"window", c.window},
            {"learning_rate", c.learning_rate}, {"epochs", c.epochs},
            {"seed", c.seed},                 {"activation", activation_name(c.activation)},
            {"selection", selection_name(c.selection)}};
}

void apply_lstm_config(const json& j, neural::LstmConfig& c) {
    if (!j.is_object()) throw std::invalid_argument("LSTM config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "input_dim") c.input_dim = v.get<int>();
        else if (k == "hidden_dim") c.hidden_dim = v.get<int>();
        else if (k == "output_dim") c.output_dim = v.get<int>();
        else if (k == "window") c.window = v.get<int>();
        else if (k == "learning_rate") c.learning_rate = v.get<double>();
        else if (k == "epochs") c.epochs = v.get<int>();
        else if (k == "seed") c.seed = v.get<std::uint64_t>();
        else if (k == "activation") c.activation = parse_activation(v.get<std::string>());
        else if (k == "selection") c.selection = parse_selection(v.get<std::string>());
        else throw std::invalid_argument("unknown LSTM config key: " + k);
    }
}

json trained_json(const neural::TrainedLstm& m) {
    json W = json::array(), U = json::array(), b = json::array();
    for (std::size_t g = 0; g < 4; ++g) {
        W.push_back(matrix_json(m.weights.W[g]));
        U.push_back(matrix_json(m.weights.U[g]));
        b.push_back(vector_json(m.weights.b[g]));
    }
    json losses_t = json::array(), losses_v = json::array();
    for (double v : m.train_loss) losses_t.push_back(number(v));
    for (double v : m.val_loss) losses_v.push_back(number(v));
    json out = {{"config", lstm_config_json(m.config)},
                {"weights", {{"W", W}, {"U", U}, {"b", b}, {"Wy", matrix_json(m.weights.Wy)},
                             {"by", vector_json(m.weights.by)}}},
                {"train_loss", losses_t},
                {"val_loss", losses_v},
                {"selected_epoch", m.selected_epoch}};
    if (m.scaler) out["scaler"] = {{"min", vector_json(m.scaler->min)}, {"max", vector_json(m.scaler->max)}};
    return out;
}

neural::TrainedLstm read_trained(const json& j) {
    neural::TrainedLstm m;
    apply_lstm_config(j.at("config"), m.config);
    m.config.validate();
    const auto& c = m.config;
    m.weights = neural::LstmWeights::zeros(c.input_dim, c.hidden_dim, c.output_dim);
    const json& w = j.at("weights");
    for (std::size_t g = 0; g < 4; ++g) {
        m.weights.W[g] = read_matrix(w.at("W").at(g), c.input_dim);
        m.weights.U[g] = read_matrix(w.at("U").at(g), c.hidden_dim);
        m.weights.b[g] = read_vector(w.at("b").at(g));
    }
    m.weights.Wy = read_matrix(w.at("Wy"), c.hidden_dim);
    m.weights.by = read_vector(w.at("by"));
    m.weights.check_same_shape(neural::LstmWeights::zeros(c.input_dim, c.hidden_dim, c.output_dim));
    for (const auto& v : j.value("train_loss", json::array())) m.train_loss.push_back(read_number(v));
    for (const auto& v : j.value("val_loss", json::array())) m.val_loss.push_back(read_number(v));
    m.selected_epoch = j.value("selected_epoch", 0);
    if (j.contains("scaler")) {
        series::ScalerParams s;
        s.min = read_vector(j["scaler"].at("min"));
        s.max = read_vector(j["scaler"].at("max"));
        m.scaler = s;
    }
    return m;
}

json orders_json(const varma::OrderRanges& r) {
    return {{"p_min", r.p_min}, {"p_max", r.p_max}, {"q_min", r.q_min},
            {"q_max", r.q_max}, {"s_min", r.s_min}, {"s_max", r.s_max}};
}

void apply_orders(const json& j, varma::OrderRanges& r) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const int v = it.value().get<int>();
        if (k == "p_min") r.p_min = v;
        else if (k == "p_max") r.p_max = v;
        else if (k == "q_min") r.q_min = v;
        else if (k == "q_max") r.q_max = v;
        else if (k == "s_min") r.s_min = v;
        else if (k == "s_max") r.s_max = v;
        else throw std::invalid_argument("unknown orders key: " + k);
    }
}

json mle_json(const varma::MleOptions& o) {
    return {{"max_iterations", o.max_iterations},
            {"relative_tolerance", o.relative_tolerance},
            {"root_limit", o.root_limit},
            {"likelihood_start", o.likelihood_start}};
}

void apply_mle(const json& j, varma::MleOptions& o) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "max_iterations") o.max_iterations = it.value().get<int>();
        else if (k == "relative_tolerance") o.relative_tolerance = it.value().get<double>();
        else if (k == "root_limit") o.root_limit = it.value().get<double>();
        else if (k == "likelihood_start") o.likelihood_start = it.value().get<int>();
        else throw std::invalid_argument("unknown mle key: " + k);
    }
}

json config_json(const hybrid::HybridConfig& c) {
    json pg = json::array(), eg = json::array();
    for (const auto& g : c.predictor_grid) pg.push_back(lstm_config_json(g));
    for (const auto& g : c.encoder_grid) eg.push_back(lstm_config_json(g));
    return {{"predictor", lstm_config_json(c.predictor)},
            {"encoder", lstm_config_json(c.encoder)},
            {"predictor_grid", pg},
            {"encoder_grid", eg},
            {"orders", orders_json(c.orders)},
            {"level_intercept", c.level_intercept},
            {"mle", mle_json(c.mle)},
            {"policy", std::string(hybrid::to_string(c.policy))},
            {"differencing", c.differencing},
            {"val_fraction", c.val_fraction},
            {"jobs", c.jobs}};
}

void apply_config(const json& j, hybrid::HybridConfig& c, const std::set<std::string>& ignored) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    const auto read_grid = [](const json& arr, const neural::LstmConfig& base) {
        std::vector<neural::LstmConfig> grid;
        for (const auto& e : arr) {
            neural::LstmConfig g = base;
            apply_lstm_config(e, g);
            grid.push_back(g);
        }
        return grid;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (ignored.contains(k)) continue;
        if (k == "predictor") apply_lstm_config(v, c.predictor);
        else if (k == "encoder") apply_lstm_config(v, c.encoder);
        else if (k == "predictor_grid") c.predictor_grid = read_grid(v, c.predictor);
        else if (k == "encoder_grid") c.encoder_grid = read_grid(v, c.encoder);
        else if (k == "orders") apply_orders(v, c.orders);
        else if (k == "level_intercept") c.level_intercept = v.get<bool>();
        else if (k == "mle") apply_mle(v, c.mle);
        else if (k == "policy") c.policy = hybrid::parse_exog_policy(v.get<std::string>());
        else if (k == "differencing") c.differencing = v.get<bool>();
        else if (k == "val_fraction") c.val_fraction = v.get<double>();
        else if (k == "jobs") c.jobs = v.get<int>();
        else throw std::invalid_argument("unknown config key: " + k);
    }
}

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
}

}  // namespace

std::string to_json(const varma::FittedVarma& fitted) { return fitted_json(fitted).dump(2); }

varma::FittedVarma fitted_varma_from_json(std::string_view text) {
    const json j = parse(text);
    return guarded([&] { return read_fitted(j); });
}

std::string to_json(const neural::TrainedLstm& model) { return trained_json(model).dump(2); }

neural::TrainedLstm trained_lstm_from_json(std::string_view text) {
    const json j = parse(text);
    return guarded([&] { return read_trained(j); });
}

std::string to_json(const hybrid::HybridModel& model) {
    json out = {{"kind", std::string(hybrid::to_string(model.kind))},
                {"config", config_json(model.config)},
                {"endog_names", model.endog_names},
                {"exog_names", model.exog_names},
                {"kept_dims", model.kept_dims},
                {"stat_start", model.stat_start},
                {"warnings", model.warnings}};
    if (model.predictor) out["predictor"] = trained_json(*model.predictor);
    if (model.encoder) out["encoder"] = trained_json(*model.encoder);
    if (model.statistical) out["statistical"] = fitted_json(*model.statistical);
    return out.dump(2);
}

hybrid::HybridModel hybrid_model_from_json(std::string_view text) {
    const json j = parse(text);
    return guarded([&] {
        hybrid::HybridModel m;
        m.kind = hybrid::parse_model_kind(j.at("kind").get<std::string>());
        apply_config(j.at("config"), m.config, {});
        m.endog_names = j.at("endog_names").get<std::vector<std::string>>();
        m.exog_names = j.value("exog_names", std::vector<std::string>{});
        m.kept_dims = j.value("kept_dims", std::vector<Index>{});
        m.stat_start = j.value("stat_start", 0);
        m.warnings = j.value("warnings", std::vector<std::string>{});
        if (j.contains("predictor")) m.predictor = read_trained(j["predictor"]);
        if (j.contains("encoder")) m.encoder = read_trained(j["encoder"]);
        if (j.contains("statistical")) m.statistical = read_fitted(j["statistical"]);
        return m;
    });
}

std::string to_json(const hybrid::HybridConfig& config) { return config_json(config).dump(2); }

void apply_config_json(std::string_view text, hybrid::HybridConfig& config, const std::set<std::string>& ignored) {
    const json j = parse(text);
    guarded([&] {
        apply_config(j, config, ignored);
        return 0;
    });
}

ModelDescription model_description_from_json(std::string_view text) {
    const json j = parse(text);
    return guarded([&] {
        ModelDescription d;
        d.spec = read_spec(j.at("spec"));
        d.params = read_params(j.at("params"), d.spec);
        return d;
    });
}

std::string to_json(const ModelDescription& description) {
    return json{{"spec", spec_json(description.spec)}, {"params", params_json(description.params)}}.dump(2);
}

}  // namespace dvarma::io
