#include "sparrow/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace sparrow {

std::string format_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 9.0e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    std::string next(const std::string& what) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return line;
        }
        throw ParseError("unexpected end of file, expected " + what, line_no + 1);
    }
};

std::vector<double> parse_row(const std::string& line, std::size_t expect,
                              const std::string& what, int line_no) {
    std::istringstream in(line);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    std::string rest;
    if (in.fail() && !in.eof() && in >> rest) {
        throw ParseError("non-numeric token in " + what, line_no);
    }
    if (values.size() != expect) {
        throw ParseError(what + ": expected " + std::to_string(expect) + " values, found " +
                             std::to_string(values.size()),
                         line_no);
    }
    return values;
}

}  // namespace

Instance read_instance(std::istream& in, std::string label) {
    LineReader reader{in};

    const std::string header = reader.next("header");
    std::istringstream hs(header);
    long n_long = -1;
    int flag = -1;
    if (!(hs >> n_long >> flag) || (flag != 0 && flag != 1)) {
        throw ParseError("header must be '<n> <initial_setup 0|1>'", reader.line_no);
    }
    if (n_long <= 0) throw ParseError("empty instances are rejected (n must be >= 1)", reader.line_no);
    if (n_long > 1'000'000) throw ParseError("implausible order count", reader.line_no);
    const std::size_t n = static_cast<std::size_t>(n_long);

    const char* row_names[6] = {"release times",     "processing times", "due times",
                                "deadlines",         "revenues",         "tardiness weights"};
    std::vector<std::vector<double>> rows;
    rows.reserve(6);
    for (const char* name : row_names) {
        const std::string line = reader.next(name);
        rows.push_back(parse_row(line, n, name, reader.line_no));
    }

    std::vector<Order> orders(n);
    for (std::size_t i = 0; i < n; ++i) {
        Order& o = orders[i];
        o.id = static_cast<int>(i);
        o.release = rows[0][i];
        o.processing = rows[1][i];
        o.due = rows[2][i];
        o.deadline = rows[3][i];
        o.revenue = rows[4][i];
        o.weight = rows[5][i];
        const int line = reader.line_no;
        if (!(o.processing > 0.0)) throw ParseError("processing time must be positive", line);
        if (o.release < 0.0 || o.revenue < 0.0 || o.weight < 0.0) {
            throw ParseError("negative release, revenue or weight", line);
        }
        if (!(o.release <= o.due && o.due <= o.deadline)) {
            throw ParseError("order " + std::to_string(i) + " violates b <= d <= e", line);
        }
        if (o.release + o.processing > o.deadline + kTol) {
            std::cerr << "warning: order " << i << " of " << (label.empty() ? "instance" : label)
                      << " cannot finish inside its window\n";
        }
    }

    const std::size_t stride = n + 1;
    std::vector<double> setup(stride * stride, 0.0);
    for (std::size_t r = 0; r < stride; ++r) {
        const std::string line =
            reader.next("setup row " + std::to_string(r) + " of " + std::to_string(stride));
        const std::vector<double> row =
            parse_row(line, stride, "setup row " + std::to_string(r), reader.line_no);
        for (std::size_t c = 0; c < stride; ++c) {
            if (row[c] < 0.0) throw ParseError("setup times must be nonnegative", reader.line_no);
            setup[r * stride + c] = c == 0 ? 0.0 : row[c];  // column 0 ignored
        }
        setup[r * stride + r] = 0.0;  // diagonal unused
    }

    return Instance(std::move(orders), std::move(setup), flag == 1, std::move(label));
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::string label = path;
    const auto slash = label.find_last_of('/');
    if (slash != std::string::npos) label.erase(0, slash + 1);
    const auto dot = label.find_last_of('.');
    if (dot != std::string::npos && dot > 0) label.erase(dot);
    return read_instance(in, label);
}

void write_instance(const Instance& instance, std::ostream& out) {
    const int n = instance.n();
    out << n << ' ' << (instance.initial_setup ? 1 : 0) << '\n';
    auto row = [&](auto field) {
        for (int i = 0; i < n; ++i) {
            if (i) out << ' ';
            out << format_number(field(instance.orders[static_cast<std::size_t>(i)]));
        }
        out << '\n';
    };
    row([](const Order& o) { return o.release; });
    row([](const Order& o) { return o.processing; });
    row([](const Order& o) { return o.due; });
    row([](const Order& o) { return o.deadline; });
    row([](const Order& o) { return o.revenue; });
    row([](const Order& o) { return o.weight; });
    for (int r = -1; r < n; ++r) {
        for (int c = -1; c < n; ++c) {
            if (c > -1) out << ' ';
            out << format_number(c == -1 || r == c ? 0.0 : instance.setup_time(r, c));
        }
        out << '\n';
    }
}

void write_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF on every platform
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_instance(instance, out);
    if (!out) throw std::runtime_error("failed while writing: " + path);
}

}  // namespace sparrow
