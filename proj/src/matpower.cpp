#include "gridveil/matpower.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gridveil {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Row {
    int line_no;
    std::vector<double> vals;
};

// Collect the numeric rows of "mpc.<name> = [ ... ];". Comments (%) stripped.
std::vector<Row> read_table(std::string_view text, const std::string& name) {
    const std::string key = "mpc." + name;
    size_t pos = 0;
    while (true) {
        pos = text.find(key, pos);
        if (pos == std::string_view::npos)
            throw ParseError("missing table " + key);
        size_t eq = text.find_first_not_of(" \t", pos + key.size());
        if (eq != std::string_view::npos && text[eq] == '=') break;
        pos += key.size();
    }
    size_t open = text.find('[', pos);
    size_t close = text.find(']', open);
    if (open == std::string_view::npos || close == std::string_view::npos)
        throw ParseError("unterminated table " + key);
    int line_no = 1 + static_cast<int>(std::count(text.begin(), text.begin() + open, '\n'));

    std::vector<Row> rows;
    std::string body(text.substr(open + 1, close - open - 1));
    std::istringstream ss(body);
    std::string line;
    while (std::getline(ss, line)) {
        ++line_no;
        if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
        for (char& ch : line)
            if (ch == ';' || ch == ',') ch = ' ';
        std::istringstream ls(line);
        Row row{line_no, {}};
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw ParseError(key + " line " + std::to_string(line_no) +
                                 ": bad numeric field '" + tok + "'");
            row.vals.push_back(v);
        }
        if (!row.vals.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

double base_mva_of(std::string_view text) {
    size_t pos = text.find("mpc.baseMVA");
    if (pos == std::string_view::npos) throw ParseError("missing table mpc.baseMVA");
    size_t eq = text.find('=', pos);
    if (eq == std::string_view::npos) throw ParseError("malformed mpc.baseMVA");
    return std::strtod(std::string(text.substr(eq + 1, 64)).c_str(), nullptr);
}

void need(const Row& r, size_t n, const std::string& table) {
    if (r.vals.size() < n)
        throw ParseError(table + " line " + std::to_string(r.line_no) + ": expected at least " +
                         std::to_string(n) + " fields, got " + std::to_string(r.vals.size()));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Network parse_case(std::string_view case_text) {
    const double base = base_mva_of(case_text);
    if (!(base > 0)) throw ParseError("baseMVA must be positive");

    std::vector<Bus> buses;
    for (const Row& r : read_table(case_text, "bus")) {
        need(r, 13, "mpc.bus");
        Bus b;
        b.id = static_cast<int>(r.vals[0]);
        if (b.id <= 0)
            throw ParseError("mpc.bus line " + std::to_string(r.line_no) + ": bus id must be positive");
        switch (static_cast<int>(r.vals[1])) {
            case 1: b.bus_type = BusType::pq; break;
            case 2: b.bus_type = BusType::pv; break;
            case 3: b.bus_type = BusType::slack; break;
            default:
                throw ParseError("mpc.bus line " + std::to_string(r.line_no) + ": bad bus type " +
                                 std::to_string(static_cast<int>(r.vals[1])));
        }
        b.p_demand = r.vals[2] / base;
        b.q_demand = r.vals[3] / base;
        b.g_shunt = r.vals[4] / base;
        b.b_shunt = r.vals[5] / base;
        b.vm_init = r.vals[7];
        b.va_init = r.vals[8] * kPi / 180.0;
        b.base_kv = r.vals[9];
        b.v_max = r.vals[11];
        b.v_min = r.vals[12];
        for (const Bus& prev : buses)
            if (prev.id == b.id)
                throw ParseError("mpc.bus line " + std::to_string(r.line_no) + ": duplicate bus id " +
                                 std::to_string(b.id));
        buses.push_back(b);
    }

    std::vector<Generator> gens;
    for (const Row& r : read_table(case_text, "gen")) {
        need(r, 10, "mpc.gen");
        if (r.vals[7] == 0) continue;  // out-of-service unit
        Generator g;
        g.bus_id = static_cast<int>(r.vals[0]);
        g.p_gen = r.vals[1] / base;
        g.q_gen = r.vals[2] / base;
        g.q_max = r.vals[3] / base;
        g.q_min = r.vals[4] / base;
        g.v_setpoint = r.vals[5];
        g.p_max = r.vals[8] / base;
        g.p_min = r.vals[9] / base;
        gens.push_back(g);
    }

    std::vector<Branch> branches;
    int ordinal = 0;
    for (const Row& r : read_table(case_text, "branch")) {
        need(r, 11, "mpc.branch");
        if (r.vals[10] == 0) continue;  // status 0 dropped at parse time
        Branch br;
        br.id = ++ordinal;
        br.from_bus = static_cast<int>(r.vals[0]);
        br.to_bus = static_cast<int>(r.vals[1]);
        br.r = r.vals[2];
        br.x = r.vals[3];
        br.b_charging = r.vals[4];
        br.rate_a = r.vals[5] / base;
        br.tap_ratio = r.vals[8] == 0.0 ? 1.0 : r.vals[8];
        br.phase_shift = r.vals[9] * kPi / 180.0;
        branches.push_back(br);
    }

    Network net(base, std::move(buses), std::move(branches), std::move(gens));
    auto diags = validate_network(net);
    if (!diags.empty()) {
        std::string msg = "invalid network:";
        for (const auto& d : diags) msg += "\n  " + d;
        throw ValidationError(msg);
    }
    return net;
}

Network parse_case_file(const std::string& path) {
    namespace fs = std::filesystem;
    std::string resolved = path;
    if (!fs::exists(resolved)) {
        if (const char* dir = std::getenv("GRIDVEIL_CASE_DIR")) {
            fs::path alt = fs::path(dir) / fs::path(path).filename();
            if (fs::exists(alt)) resolved = alt.string();
        }
    }
    std::ifstream in(resolved);
    if (!in) throw ParseError("cannot open case file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_case(ss.str());
}

std::string to_matpower(const Network& net) {
    std::ostringstream os;
    const double base = net.base_mva();
    os << "function mpc = case_canonical\nmpc.version = '2';\nmpc.baseMVA = " << fmt(base)
       << ";\nmpc.bus = [\n";
    for (const Bus& b : net.buses()) {
        int type = b.bus_type == BusType::slack ? 3 : (b.bus_type == BusType::pv ? 2 : 1);
        os << '\t' << b.id << '\t' << type << '\t' << fmt(b.p_demand * base) << '\t'
           << fmt(b.q_demand * base) << '\t' << fmt(b.g_shunt * base) << '\t'
           << fmt(b.b_shunt * base) << "\t1\t" << fmt(b.vm_init) << '\t'
           << fmt(b.va_init * 180.0 / kPi) << '\t' << fmt(b.base_kv) << "\t1\t" << fmt(b.v_max)
           << '\t' << fmt(b.v_min) << ";\n";
    }
    os << "];\nmpc.gen = [\n";
    for (const Generator& g : net.generators()) {
        os << '\t' << g.bus_id << '\t' << fmt(g.p_gen * base) << '\t' << fmt(g.q_gen * base)
           << '\t' << fmt(g.q_max * base) << '\t' << fmt(g.q_min * base) << '\t'
           << fmt(g.v_setpoint) << "\t" << fmt(base) << "\t1\t" << fmt(g.p_max * base) << '\t'
           << fmt(g.p_min * base) << ";\n";
    }
    os << "];\nmpc.branch = [\n";
    for (const Branch& br : net.branches()) {
        os << '\t' << br.from_bus << '\t' << br.to_bus << '\t' << fmt(br.r) << '\t' << fmt(br.x)
           << '\t' << fmt(br.b_charging) << '\t' << fmt(br.rate_a * base) << "\t0\t0\t"
           << fmt(br.tap_ratio == 1.0 ? 0.0 : br.tap_ratio) << '\t'
           << fmt(br.phase_shift * 180.0 / kPi) << "\t1\t-360\t360;\n";
    }
    os << "];\n";
    return os.str();
}

std::string to_json(const Network& net) {
    nlohmann::ordered_json j;
    j["base_mva"] = net.base_mva();
    auto& jb = j["buses"] = nlohmann::ordered_json::array();
    for (const Bus& b : net.buses()) {
        jb.push_back({{"id", b.id},
                      {"type", b.bus_type == BusType::slack ? "slack"
                               : b.bus_type == BusType::pv  ? "pv"
                                                            : "pq"},
                      {"p_demand", b.p_demand},
                      {"q_demand", b.q_demand},
                      {"g_shunt", b.g_shunt},
                      {"b_shunt", b.b_shunt},
                      {"v_min", b.v_min},
                      {"v_max", b.v_max},
                      {"base_kv", b.base_kv}});
    }
    auto& jg = j["generators"] = nlohmann::ordered_json::array();
    for (const Generator& g : net.generators()) {
        jg.push_back({{"bus", g.bus_id},
                      {"p_gen", g.p_gen},
                      {"q_gen", g.q_gen},
                      {"q_min", g.q_min},
                      {"q_max", g.q_max},
                      {"p_min", g.p_min},
                      {"p_max", g.p_max},
                      {"v_setpoint", g.v_setpoint}});
    }
    auto& jr = j["branches"] = nlohmann::ordered_json::array();
    for (const Branch& br : net.branches()) {
        jr.push_back({{"id", br.id},
                      {"from", br.from_bus},
                      {"to", br.to_bus},
                      {"r", br.r},
                      {"x", br.x},
                      {"b_charging", br.b_charging},
                      {"tap_ratio", br.tap_ratio},
                      {"phase_shift", br.phase_shift},
                      {"rate_a", br.rate_a}});
    }
    return j.dump(1);
}

}  // namespace gridveil
