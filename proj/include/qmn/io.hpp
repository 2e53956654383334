#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qmn/identity.hpp"
#include "qmn/processes.hpp"

namespace qmn {

/// Writes via a temporary file in the same directory, then renames, so a
/// reader never sees a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::json report_to_json(const Report& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : report.records) {
        nlohmann::json item{{"check_name", rec.check_name},
                            {"params", rec.params},
                            {"indices", rec.indices},
                            {"lhs", rec.lhs},
                            {"rhs", rec.rhs},
                            {"pass", rec.pass},
                            {"tolerance", rec.tolerance}};
        if (!rec.note.empty()) item["note"] = rec.note;
        arr.push_back(std::move(item));
    }
    return arr;
}

inline std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "check_name,params,indices,lhs,rhs,pass,tolerance\n";
    for (const auto& rec : report.records) {
        out << rec.check_name << ",\"" << rec.params << "\",\"";
        for (std::size_t i = 0; i < rec.indices.size(); ++i) {
            if (i) out << ' ';
            out << rec.indices[i];
        }
        out << "\"," << rec.lhs << ',' << rec.rhs << ','
            << (rec.pass ? "true" : "false") << ',' << to_display_string(rec.tolerance)
            << '\n';
    }
    return out.str();
}

inline std::string summary_to_csv(const EnsembleSummary& summary) {
    std::ostringstream out;
    out << "replica,time,current,mean_displacement,histogram\n";
    for (const auto& rec : summary.records) {
        out << rec.replica << ',' << rec.time << ',' << rec.current << ','
            << to_display_string(rec.mean_displacement) << ',';
        for (std::size_t i = 0; i < rec.histogram.size(); ++i) {
            if (i) out << '|';
            out << rec.histogram[i];
        }
        out << '\n';
    }
    return out.str();
}

inline nlohmann::json summary_to_json(const EnsembleSummary& summary) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : summary.records) {
        arr.push_back({{"replica", rec.replica},
                       {"time", rec.time},
                       {"current", rec.current},
                       {"mean_displacement", rec.mean_displacement},
                       {"occupancy_histogram", rec.histogram}});
    }
    return arr;
}

/// CSV for a pmf table: j, weight, cumulative. Rational weights render as
/// "p/q"; floats round-trip at 17 significant digits.
template <typename Scalar>
std::string pmf_table_to_csv(const PmfTable<Scalar>& table) {
    std::ostringstream out;
    out << "j,weight,cumulative\n";
    Scalar cumulative(0);
    for (std::size_t j = 0; j < table.weights.size(); ++j) {
        cumulative += table.weights[j];
        out << j << ',' << to_display_string(table.weights[j]) << ','
            << to_display_string(cumulative) << '\n';
    }
    return out.str();
}

template <typename Scalar>
nlohmann::json pmf_table_to_json(const PmfTable<Scalar>& table) {
    nlohmann::json arr = nlohmann::json::array();
    Scalar cumulative(0);
    for (std::size_t j = 0; j < table.weights.size(); ++j) {
        cumulative += table.weights[j];
        arr.push_back({{"j", j},
                       {"weight", to_display_string(table.weights[j])},
                       {"cumulative", to_display_string(cumulative)}});
    }
    return arr;
}

}  // namespace qmn
