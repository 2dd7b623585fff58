#include "dwlab/store.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fs = std::filesystem;

namespace dwlab {

namespace {

const char* class_tag(DataClass c) { return c == DataClass::A ? "A" : "B"; }

DataClass parse_class(const std::string& s) {
    if (s == "A") return DataClass::A;
    if (s == "B") return DataClass::B;
    throw std::invalid_argument("lifespan table: bad class value '" + s + "'");
}

bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::invalid_argument("lifespan table: bad censored value '" + s + "'");
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("lifespan table: bad numeric value '" + s + "'");
    }
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string format_g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ResultStore::ResultStore(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) throw std::invalid_argument("out: output directory is empty");
    fs::create_directories(dir_);
}

std::string ResultStore::write_text(const std::string& name,
                                    const std::string& content) const {
    const fs::path target = fs::path(dir_) / name;
    const fs::path tmp = fs::path(dir_) / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out.good())
            throw std::runtime_error("store: cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
    return target.string();
}

std::string lifespan_table(const std::vector<LifespanRecord>& records) {
    std::ostringstream out;
    out << "eps,t0,censored,class,p\n";
    for (const auto& r : records) {
        out << format_g17(r.eps) << ',' << format_g17(r.t0) << ','
            << (r.censored ? "true" : "false") << ',' << class_tag(r.data_class)
            << ',' << format_g17(r.p) << '\n';
    }
    return out.str();
}

std::vector<LifespanRecord> read_lifespan_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("input: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "eps,t0,censored,class,p")
        throw std::invalid_argument("input: " + path +
                                    " is not a lifespan table (bad header)");
    std::vector<LifespanRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 5)
            throw std::invalid_argument("input: " + path + ": bad row '" + line + "'");
        LifespanRecord r;
        r.eps = parse_double(f[0]);
        r.t0 = parse_double(f[1]);
        r.censored = parse_bool(f[2]);
        r.data_class = parse_class(f[3]);
        r.p = parse_double(f[4]);
        out.push_back(r);
    }
    return out;
}

std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<LifespanRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("emit_plot_data: empty record set");
    std::map<std::pair<int, double>, std::vector<LifespanRecord>> groups;
    for (const auto& r : records)
        groups[{r.data_class == DataClass::A ? 0 : 1, r.p}].push_back(r);
    std::vector<std::string> paths;
    for (const auto& [key, recs] : groups) {
        const std::string name = std::string("lifespan_") +
                                 (key.first == 0 ? "A" : "B") + "_p" +
                                 format_short(key.second) + ".csv";
        paths.push_back(store.write_text(name, lifespan_table(recs)));
    }
    return paths;
}

std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<ApproximationCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("emit_plot_data: empty curve set");
    std::vector<std::string> paths;
    for (const auto& c : curves) {
        std::ostringstream out;
        out << "t,error\n";
        for (const auto& pt : c.points)
            out << format_g17(pt.t) << ',' << format_g17(pt.error) << '\n';
        const std::string name = "error_curve_B_p" + format_short(c.p) + "_eps" +
                                 format_short(c.eps) + ".csv";
        paths.push_back(store.write_text(name, out.str()));
    }
    return paths;
}

std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<SolverState>& states,
                                        DataClass data_class, double p) {
    if (states.empty()) throw std::invalid_argument("emit_plot_data: empty state set");
    std::vector<std::string> paths;
    for (const auto& st : states) {
        std::ostringstream out;
        out << "x,u,ut\n";
        for (std::size_t i = 0; i < st.u.grid.n; ++i)
            out << format_g17(st.u.grid.x(i)) << ',' << format_g17(st.u.values[i])
                << ',' << format_g17(st.ut.values[i]) << '\n';
        const std::string name = std::string("snapshot_") + class_tag(data_class) +
                                 "_p" + format_short(p) + "_t" +
                                 format_short(st.time) + ".csv";
        paths.push_back(store.write_text(name, out.str()));
    }
    return paths;
}

}  // namespace dwlab
