#include "bzsolve/csv.hpp"

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace bzsolve::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

long parse_long(std::string_view token) {
    long value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error("csv: malformed integer field '" + std::string(token) + "'");
    }
    return value;
}

// Reads the next non-empty line; returns false on clean EOF.
bool next_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        throw std::runtime_error("csv: failed to format a floating-point value");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error("csv: malformed numeric field '" + std::string(token) + "'");
    }
    return value;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const std::size_t nodes = traj.states.size();
    if (nodes == 0) throw std::runtime_error("csv: trajectory has no states");
    const std::size_t dim = traj.states.front().size();

    os << "k,t";
    for (std::size_t i = 1; i <= dim; ++i) os << ",u_" << i;
    os << '\n';
    for (std::size_t k = 0; k < nodes; ++k) {
        if (traj.states[k].size() != dim) {
            throw std::runtime_error("csv: inconsistent state dimension in trajectory");
        }
        os << k << ',' << format_double(traj.grid.node(k));
        for (double value : traj.states[k]) os << ',' << format_double(value);
        os << '\n';
    }
    if (!os) throw std::runtime_error("csv: write failed");
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw std::runtime_error("csv: empty trajectory file");
    auto header = split_fields(line);
    if (header.size() < 3 || header[0] != "k" || header[1] != "t") {
        throw std::runtime_error("csv: expected trajectory header k,t,u_1,...");
    }
    const std::size_t dim = header.size() - 2;

    std::vector<double> times;
    std::vector<StateVec> states;
    while (next_line(is, line)) {
        auto fields = split_fields(line);
        if (fields.size() != dim + 2) {
            throw std::runtime_error("csv: trajectory row has wrong field count");
        }
        const long k = parse_long(fields[0]);
        if (k != static_cast<long>(states.size())) {
            throw std::runtime_error("csv: trajectory rows must be consecutive in k");
        }
        times.push_back(parse_double(fields[1]));
        StateVec s(dim);
        for (std::size_t i = 0; i < dim; ++i) s[i] = parse_double(fields[i + 2]);
        states.push_back(std::move(s));
    }
    if (states.size() < 2) throw std::runtime_error("csv: trajectory needs at least two rows");

    Trajectory traj{TimeGrid(times[1] - times[0], states.size()), std::move(states)};
    return traj;
}

void write_snapshots_csv(std::ostream& os, std::span<const SplitState> snapshots,
                         const Grid1D& grid) {
    os << "k,t,j,x,u,v\n";
    for (const SplitState& s : snapshots) {
        if (s.u.size() != grid.node_count() || s.v.size() != grid.node_count()) {
            throw std::runtime_error("csv: snapshot size does not match grid");
        }
        for (std::size_t j = 0; j < s.u.size(); ++j) {
            os << s.step << ',' << format_double(s.time) << ',' << j << ','
               << format_double(static_cast<double>(j) * grid.dx()) << ','
               << format_double(s.u[j]) << ',' << format_double(s.v[j]) << '\n';
        }
    }
    if (!os) throw std::runtime_error("csv: write failed");
}

std::vector<SplitState> read_snapshots_csv(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw std::runtime_error("csv: empty snapshot file");
    if (line != "k,t,j,x,u,v") {
        throw std::runtime_error("csv: expected snapshot header k,t,j,x,u,v");
    }

    std::vector<SplitState> out;
    while (next_line(is, line)) {
        auto fields = split_fields(line);
        if (fields.size() != 6) throw std::runtime_error("csv: snapshot row has wrong field count");
        const long k = parse_long(fields[0]);
        const double t = parse_double(fields[1]);
        const long j = parse_long(fields[2]);
        const double u = parse_double(fields[4]);
        const double v = parse_double(fields[5]);
        if (out.empty() || out.back().step != k) {
            if (j != 0) throw std::runtime_error("csv: snapshot block must start at node 0");
            out.push_back(SplitState{{}, {}, k, t});
        } else if (j != static_cast<long>(out.back().u.size())) {
            throw std::runtime_error("csv: snapshot nodes must be consecutive in j");
        }
        out.back().u.push_back(u);
        out.back().v.push_back(v);
    }
    if (out.empty()) throw std::runtime_error("csv: snapshot file has no data rows");
    return out;
}

InitialField read_initial_field_csv(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw std::runtime_error("csv: empty initial-field file");
    if (line != "j,u,v") throw std::runtime_error("csv: expected initial-field header j,u,v");

    InitialField field;
    while (next_line(is, line)) {
        auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw std::runtime_error("csv: initial-field row has wrong field count");
        }
        const long j = parse_long(fields[0]);
        if (j != static_cast<long>(field.u.size())) {
            throw std::runtime_error("csv: initial-field rows must be consecutive in j");
        }
        field.u.push_back(parse_double(fields[1]));
        field.v.push_back(parse_double(fields[2]));
    }
    if (field.u.empty()) throw std::runtime_error("csv: initial-field file has no data rows");
    return field;
}

}  // namespace bzsolve::io
