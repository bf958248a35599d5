#include "twrsim/table_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "twrsim/errors.hpp"

namespace twrsim {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string provenance_comment(const Provenance& prov) {
    std::string line = "# ";
    line += kToolName;
    line += ' ';
    line += kToolVersion;
    line += " command=" + prov.command;
    line += " seed=" + std::to_string(prov.seed);
    line += " config_hash=" + (prov.config_hash.empty() ? "-" : prov.config_hash);
    return line;
}

nlohmann::json provenance_json(const Provenance& prov) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", prov.command},
            {"seed", prov.seed},
            {"config_hash", prov.config_hash.empty() ? "-" : prov.config_hash}};
}

} // namespace

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

void write_rows_csv(std::ostream& out, const Provenance& prov, std::span<const SweepRow> rows) {
    out << provenance_comment(prov) << '\n';
    out << "ratio,delay_b_ns,estimator,n_effective,"
           "sample_mean_ns,sample_std_ns,ci_low_ns,ci_high_ns,"
           "predicted_bias_ns,predicted_std_ns,"
           "sample_mean_m,sample_std_m,predicted_bias_m,predicted_std_m\n";
    for (const SweepRow& r : rows) {
        out << fixed6(r.ratio) << ',' << fixed6(r.delay_b.ns()) << ',' << name(r.estimator)
            << ',' << r.n_effective << ',' << fixed6(r.sample_mean.ns()) << ','
            << fixed6(r.sample_std.ns()) << ',' << fixed6(r.ci_low.ns()) << ','
            << fixed6(r.ci_high.ns()) << ',';
        if (r.has_prediction)
            out << fixed6(r.predicted_bias.ns()) << ',' << fixed6(r.predicted_std.ns());
        else
            out << ',';
        out << ',' << fixed6(tof_to_distance(r.sample_mean)) << ','
            << fixed6(tof_to_distance(r.sample_std)) << ',';
        if (r.has_prediction)
            out << fixed6(tof_to_distance(r.predicted_bias)) << ','
                << fixed6(tof_to_distance(r.predicted_std));
        else
            out << ',';
        out << '\n';
    }
}

void write_rows_json(std::ostream& out, const Provenance& prov, std::span<const SweepRow> rows) {
    nlohmann::json doc;
    doc["provenance"] = provenance_json(prov);
    auto& arr = doc["rows"] = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        nlohmann::json j{{"ratio", r.ratio},
                         {"delay_b_ns", r.delay_b.ns()},
                         {"estimator", name(r.estimator)},
                         {"n_effective", r.n_effective},
                         {"sample_mean_ns", r.sample_mean.ns()},
                         {"sample_std_ns", r.sample_std.ns()},
                         {"ci_low_ns", r.ci_low.ns()},
                         {"ci_high_ns", r.ci_high.ns()},
                         {"sample_mean_m", tof_to_distance(r.sample_mean)},
                         {"sample_std_m", tof_to_distance(r.sample_std)}};
        if (r.has_prediction) {
            j["predicted_bias_ns"] = r.predicted_bias.ns();
            j["predicted_std_ns"] = r.predicted_std.ns();
            j["predicted_bias_m"] = tof_to_distance(r.predicted_bias);
            j["predicted_std_m"] = tof_to_distance(r.predicted_std);
        } else {
            j["predicted_bias_ns"] = nullptr;
            j["predicted_std_ns"] = nullptr;
        }
        arr.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

std::vector<PredictRow> build_predict_table(const NoiseSummary& n,
                                            std::span<const double> ratios) {
    std::vector<PredictRow> rows;
    rows.reserve(ratios.size());
    for (double r : ratios) {
        const DelayRatio ratio(r);
        PredictRow row;
        row.ratio = r;
        row.twr_bias = predict_twr_bias(n);
        row.tdoa_bias = predict_tdoa_bias(n);
        const double twr_var = predict_twr_var(n, ratio);
        const double tdoa_var = predict_tdoa_var(n, ratio);
        row.twr_std = std_from_var(twr_var);
        row.tdoa_std = std_from_var(tdoa_var);
        row.var_ratio = twr_var > 0.0 ? tdoa_var / twr_var : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_predict_csv(std::ostream& out, const Provenance& prov,
                       std::span<const PredictRow> rows) {
    out << provenance_comment(prov) << '\n';
    out << "ratio,twr_bias_ns,twr_std_ns,tdoa_bias_ns,tdoa_std_ns,var_ratio,"
           "twr_bias_m,twr_std_m,tdoa_bias_m,tdoa_std_m\n";
    for (const PredictRow& r : rows) {
        out << fixed6(r.ratio) << ',' << fixed6(r.twr_bias.ns()) << ','
            << fixed6(r.twr_std.ns()) << ',' << fixed6(r.tdoa_bias.ns()) << ','
            << fixed6(r.tdoa_std.ns()) << ',' << fixed6(r.var_ratio) << ','
            << fixed6(tof_to_distance(r.twr_bias)) << ',' << fixed6(tof_to_distance(r.twr_std))
            << ',' << fixed6(tof_to_distance(r.tdoa_bias)) << ','
            << fixed6(tof_to_distance(r.tdoa_std)) << '\n';
    }
}

void write_predict_json(std::ostream& out, const Provenance& prov,
                        std::span<const PredictRow> rows) {
    nlohmann::json doc;
    doc["provenance"] = provenance_json(prov);
    auto& arr = doc["rows"] = nlohmann::json::array();
    for (const PredictRow& r : rows)
        arr.push_back({{"ratio", r.ratio},
                       {"twr_bias_ns", r.twr_bias.ns()},
                       {"twr_std_ns", r.twr_std.ns()},
                       {"tdoa_bias_ns", r.tdoa_bias.ns()},
                       {"tdoa_std_ns", r.tdoa_std.ns()},
                       {"var_ratio", r.var_ratio}});
    out << doc.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::filesystem::path& path) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw ParseError(path.string() + ": missing column '" + name + "'");
}

} // namespace

std::vector<ScoredPoint> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open table: " + path.string());

    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty())
        throw ParseError(path.string() + ": no header row found");

    const std::size_t c_est = find_column(header, "estimator", path);
    const std::size_t c_ratio = find_column(header, "ratio", path);
    const std::size_t c_sample = find_column(header, "sample_std_ns", path);
    const std::size_t c_pred = find_column(header, "predicted_std_ns", path);

    std::vector<ScoredPoint> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": row has " + std::to_string(fields.size()) +
                             " fields, header has " + std::to_string(header.size()));
        ScoredPoint p;
        p.estimator = fields[c_est];
        try {
            p.ratio = std::stod(fields[c_ratio]);
            p.sample_std_ns = std::stod(fields[c_sample]);
            if (!fields[c_pred].empty()) {
                p.predicted_std_ns = std::stod(fields[c_pred]);
                p.has_prediction = true;
            }
        } catch (const std::exception&) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": non-numeric value in a numeric column");
        }
        points.push_back(std::move(p));
    }
    return points;
}

} // namespace twrsim
