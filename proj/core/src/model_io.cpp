#include "fpls/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "fpls/errors.hpp"

namespace fpls {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw DataError("model JSON: '" + what + "' is not an array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Eigen::MatrixXd(0, 0);
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw DataError("model JSON: ragged matrix in '" + what + "'");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json rowvector_to_json(const Eigen::RowVectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw DataError("model JSON: '" + what + "' is not an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

}  // namespace

std::string model_to_json(const StoredModel& stored) {
    const DiscriminantModel& m = stored.model;
    json doc;
    doc["format"] = "fpls-model";
    doc["version"] = 1;
    doc["variant"] = variant_name(m.variant());
    doc["lambda"] = m.lambda();
    doc["components"] = m.components();
    doc["standardized"] = m.standardized();
    doc["conditions"] = m.class_labels();
    if (stored.basis) {
        doc["basis"] = {{"degree", stored.basis->degree()},
                        {"interior_knots", stored.basis->interior_knots()},
                        {"t_min", stored.basis->t_min()},
                        {"t_max", stored.basis->t_max()},
                        {"penalty_order", stored.basis->penalty_order()}};
    }
    if (!stored.grid.empty()) doc["grid"] = stored.grid;
    doc["transform_factor"] = matrix_to_json(m.transform().factor);
    doc["pls"] = {{"weights", matrix_to_json(m.pls().weights())},
                  {"x_loadings", matrix_to_json(m.pls().x_loadings())},
                  {"y_loadings", matrix_to_json(m.pls().y_loadings())},
                  {"x_means", rowvector_to_json(m.pls().x_means())},
                  {"y_means", rowvector_to_json(m.pls().y_means())}};
    doc["lda"] = {{"beta_pls", matrix_to_json(m.beta_pls())},
                  {"intercepts", vector_to_json(m.intercepts())},
                  {"beta_basis", matrix_to_json(m.beta_basis())},
                  {"centroids", matrix_to_json(m.centroids())}};
    return doc.dump(2) + "\n";
}

StoredModel model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON parse error: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "fpls-model")
            throw DataError("not an fpls model document");
        if (doc.at("version").get<int>() != 1)
            throw DataError("unsupported model version");

        const Variant variant = variant_from_name(doc.at("variant").get<std::string>());
        const double lambda = doc.at("lambda").get<double>();
        const int q = doc.at("components").get<int>();
        const bool standardized = doc.value("standardized", false);
        std::vector<std::string> conditions =
            doc.at("conditions").get<std::vector<std::string>>();

        StoredModel stored;
        if (doc.contains("basis")) {
            const auto& b = doc.at("basis");
            stored.basis = BasisSystem::build(
                b.at("degree").get<int>(), b.at("interior_knots").get<int>(),
                b.at("t_min").get<double>(), b.at("t_max").get<double>(),
                b.at("penalty_order").get<int>());
        }
        if (doc.contains("grid")) stored.grid = doc.at("grid").get<std::vector<double>>();
        if (variant != Variant::multivariate && !stored.basis)
            throw DataError("functional model without basis parameters");
        if (variant == Variant::multivariate && stored.grid.empty())
            throw DataError("multivariate model without its observation grid");

        FeatureTransform transform;
        transform.variant = variant;
        transform.lambda = lambda;
        transform.factor = matrix_from_json(doc.at("transform_factor"), "transform_factor");
        if (variant == Variant::multivariate || lambda == 0.0) {
            transform.map = transform.factor;
        } else {
            transform.map = transform.factor.triangularView<Eigen::Lower>()
                                .solve(stored.basis->gram())
                                .transpose();
        }

        const auto& p = doc.at("pls");
        PlsModel pls = PlsModel::from_parts(
            matrix_from_json(p.at("weights"), "pls.weights"), Eigen::MatrixXd(0, 0),
            matrix_from_json(p.at("x_loadings"), "pls.x_loadings"),
            matrix_from_json(p.at("y_loadings"), "pls.y_loadings"),
            vector_from_json(p.at("x_means"), "pls.x_means").transpose(),
            vector_from_json(p.at("y_means"), "pls.y_means").transpose());

        const auto& l = doc.at("lda");
        stored.model = DiscriminantModel::from_parts(
            std::move(transform), std::move(pls), q,
            matrix_from_json(l.at("beta_pls"), "lda.beta_pls"),
            vector_from_json(l.at("intercepts"), "lda.intercepts"),
            matrix_from_json(l.at("beta_basis"), "lda.beta_basis"),
            matrix_from_json(l.at("centroids"), "lda.centroids"), std::move(conditions),
            standardized);
        return stored;
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON is missing fields: ") + e.what());
    }
}

void save_model(const StoredModel& stored, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    const std::string text = model_to_json(stored);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("failed writing '" + path + "'");
}

StoredModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

}  // namespace fpls
