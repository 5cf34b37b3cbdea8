#include "fpls/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <string_view>
#include <utility>

#include "fpls/errors.hpp"
#include "fpls/format.hpp"

namespace fpls {

namespace {

int index_of(const std::vector<std::string>& v, const std::string& s) {
    const auto it = std::find(v.begin(), v.end(), s);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

double parse_double(std::string_view field, const std::string& where) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw DataError("invalid number '" + std::string(field) + "' in " + where);
    return out;
}

}  // namespace

CurveDataset CurveDataset::from_curves(std::vector<Curve> curves) {
    if (curves.empty()) throw DataError("dataset has no curves");

    CurveDataset ds;
    for (const auto& c : curves) {
        if (index_of(ds.subjects_, c.subject) < 0) ds.subjects_.push_back(c.subject);
        if (index_of(ds.conditions_, c.condition) < 0) ds.conditions_.push_back(c.condition);
    }
    const int n = static_cast<int>(ds.subjects_.size());
    const int k = static_cast<int>(ds.conditions_.size());

    std::vector<int> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), -1);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const int si = index_of(ds.subjects_, curves[i].subject);
        const int ci = index_of(ds.conditions_, curves[i].condition);
        auto& slot = seen[static_cast<std::size_t>(si) * k + ci];
        if (slot >= 0)
            throw DataError("duplicate curve for subject '" + curves[i].subject +
                            "', condition '" + curves[i].condition + "'");
        slot = static_cast<int>(i);
    }
    ds.curves_.reserve(curves.size());
    for (int s = 0; s < n; ++s) {
        for (int c = 0; c < k; ++c) {
            const int idx = seen[static_cast<std::size_t>(s) * k + c];
            if (idx < 0)
                throw DataError("subject '" + ds.subjects_[s] + "' is missing condition '" +
                                ds.conditions_[c] + "'");
            ds.curves_.push_back(std::move(curves[static_cast<std::size_t>(idx)]));
        }
    }
    for (const auto& c : ds.curves_) {
        if (c.t.size() != c.value.size() || c.t.empty())
            throw DataError("curve (" + c.subject + ", " + c.condition + ") has no observations");
    }
    ds.grid_shared_ = std::all_of(ds.curves_.begin(), ds.curves_.end(),
                                  [&](const Curve& c) { return c.t == ds.curves_.front().t; });
    return ds;
}

const Curve& CurveDataset::curve(int subject, int condition) const {
    return curves_[static_cast<std::size_t>(subject) * conditions_.size() +
                   static_cast<std::size_t>(condition)];
}

const std::vector<double>& CurveDataset::shared_grid() const {
    if (!grid_shared_) throw DataError("dataset does not have a shared observation grid");
    return curves_.front().t;
}

CurveDataset CurveDataset::subset(const std::vector<int>& subject_indices) const {
    std::vector<Curve> picked;
    const int k = condition_count();
    picked.reserve(subject_indices.size() * static_cast<std::size_t>(k));
    for (int s : subject_indices) {
        if (s < 0 || s >= subject_count()) throw ParameterError("subject index out of range");
        for (int c = 0; c < k; ++c) picked.push_back(curve(s, c));
    }
    return from_curves(std::move(picked));
}

CurveDataset read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "' for reading");
    return read_curve_csv(in, path);
}

CurveDataset read_curve_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + name + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "subject,condition,t,value")
        throw DataError("'" + name + "': expected header 'subject,condition,t,value', got '" +
                        line + "'");

    // (subject, condition) -> curve under construction, in appearance order
    std::vector<Curve> curves;
    std::map<std::pair<std::string, std::string>, std::size_t> where;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string_view, 4> f;
        std::string_view rest = line;
        for (int i = 0; i < 4; ++i) {
            const auto comma = rest.find(',');
            if (i < 3) {
                if (comma == std::string_view::npos)
                    throw DataError("'" + name + "' line " + std::to_string(line_no) +
                                    ": expected 4 fields");
                f[i] = rest.substr(0, comma);
                rest = rest.substr(comma + 1);
            } else {
                if (comma != std::string_view::npos)
                    throw DataError("'" + name + "' line " + std::to_string(line_no) +
                                    ": expected 4 fields");
                f[i] = rest;
            }
        }
        const std::string where_str = "'" + name + "' line " + std::to_string(line_no);
        const double t = parse_double(f[2], where_str);
        const double v = parse_double(f[3], where_str);
        const auto key = std::make_pair(std::string(f[0]), std::string(f[1]));
        auto it = where.find(key);
        if (it == where.end()) {
            it = where.emplace(key, curves.size()).first;
            curves.push_back(Curve{key.first, key.second, {}, {}});
        }
        curves[it->second].t.push_back(t);
        curves[it->second].value.push_back(v);
    }
    return CurveDataset::from_curves(std::move(curves));
}

void write_curve_csv(const CurveDataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    write_curve_csv(data, out);
    if (!out) throw DataError("failed writing '" + path + "'");
}

void write_curve_csv(const CurveDataset& data, std::ostream& out) {
    std::string buf = "subject,condition,t,value\n";
    for (int r = 0; r < data.curve_count(); ++r) {
        const Curve& c = data.curve_at(r);
        for (std::size_t i = 0; i < c.t.size(); ++i) {
            buf += c.subject;
            buf += ',';
            buf += c.condition;
            buf += ',';
            append_double(buf, c.t[i]);
            buf += ',';
            append_double(buf, c.value[i]);
            buf += '\n';
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Eigen::MatrixXd make_dummy(const std::vector<int>& labels, int n_conditions) {
    if (n_conditions < 1) throw ParameterError("need at least 1 condition");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                                              n_conditions - 1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int k = labels[i];
        if (k < 1 || k > n_conditions) throw ParameterError("label out of range 1..K");
        if (k < n_conditions) d(static_cast<Eigen::Index>(i), k - 1) = 1.0;
    }
    return d;
}

CoefficientMatrix make_frame(const CurveDataset& data) {
    CoefficientMatrix m;
    m.subjects = data.subjects();
    m.conditions = data.conditions();
    const int k = data.condition_count();
    m.labels.reserve(static_cast<std::size_t>(data.curve_count()));
    for (int s = 0; s < data.subject_count(); ++s)
        for (int c = 0; c < k; ++c) m.labels.push_back(c + 1);
    m.dummy = make_dummy(m.labels, k);
    return m;
}

CoefficientMatrix reorder_conditions(const CoefficientMatrix& m,
                                     const std::vector<std::string>& target_order) {
    if (m.conditions == target_order) return m;
    const int k = m.condition_count();
    if (static_cast<int>(target_order.size()) != k)
        throw DataError("condition sets differ in size");
    std::vector<int> source_of(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int idx = index_of(m.conditions, target_order[static_cast<std::size_t>(j)]);
        if (idx < 0)
            throw DataError("condition '" + target_order[static_cast<std::size_t>(j)] +
                            "' not present in the data");
        source_of[static_cast<std::size_t>(j)] = idx;
    }
    CoefficientMatrix out;
    out.subjects = m.subjects;
    out.conditions = target_order;
    out.values.resize(m.values.rows(), m.values.cols());
    out.labels.resize(m.labels.size());
    for (int s = 0; s < m.subject_count(); ++s) {
        for (int j = 0; j < k; ++j) {
            const Eigen::Index dst = static_cast<Eigen::Index>(s) * k + j;
            const Eigen::Index src =
                static_cast<Eigen::Index>(s) * k + source_of[static_cast<std::size_t>(j)];
            out.values.row(dst) = m.values.row(src);
            out.labels[static_cast<std::size_t>(dst)] = j + 1;
        }
    }
    out.dummy = make_dummy(out.labels, k);
    return out;
}

CoefficientMatrix raw_value_matrix(const CurveDataset& data) {
    const auto& grid = data.shared_grid();
    CoefficientMatrix m = make_frame(data);
    m.values.resize(data.curve_count(), static_cast<Eigen::Index>(grid.size()));
    for (int r = 0; r < data.curve_count(); ++r) {
        const Curve& c = data.curve_at(r);
        for (std::size_t j = 0; j < grid.size(); ++j)
            m.values(r, static_cast<Eigen::Index>(j)) = c.value[j];
    }
    return m;
}

}  // namespace fpls
