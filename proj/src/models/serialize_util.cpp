#include "gascast/models/serialize_util.hpp"

#include <cstdio>
#include <sstream>

namespace gascast::detail {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string next_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("model file: unexpected end of file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::string expect_field(std::istream& in, const std::string& name) {
    const std::string line = next_line(in);
    if (line.rfind(name + " ", 0) != 0) {
        throw Error("model file: expected field '" + name + "', got '" + line + "'");
    }
    return line.substr(name.size() + 1);
}

}  // namespace

void write_scalar(std::ostream& out, const std::string& name, double v) {
    out << name << " " << fmt(v) << "\n";
}

void write_int(std::ostream& out, const std::string& name, long long v) {
    out << name << " " << v << "\n";
}

void write_vector(std::ostream& out, const std::string& name, const Eigen::VectorXd& v) {
    out << name << " " << v.size();
    for (Eigen::Index i = 0; i < v.size(); ++i) out << " " << fmt(v(i));
    out << "\n";
}

void write_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixXd& m) {
    out << name << " " << m.rows() << " " << m.cols();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << " " << fmt(m(i, j));
    }
    out << "\n";
}

void expect_header(std::istream& in, const std::string& kind) {
    const std::string magic = next_line(in);
    if (magic != "gascast-model 1") {
        throw Error("model file: unsupported format line '" + magic + "'");
    }
    const std::string k = next_line(in);
    if (k != "kind " + kind) {
        throw Error("model file: expected 'kind " + kind + "', got '" + k + "'");
    }
}

double read_scalar(std::istream& in, const std::string& name) {
    return std::stod(expect_field(in, name));
}

long long read_int(std::istream& in, const std::string& name) {
    return std::stoll(expect_field(in, name));
}

Eigen::VectorXd read_vector(std::istream& in, const std::string& name) {
    std::istringstream ss(expect_field(in, name));
    Eigen::Index n = 0;
    ss >> n;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(ss >> v(i))) throw Error("model file: truncated vector '" + name + "'");
    }
    return v;
}

Eigen::MatrixXd read_matrix(std::istream& in, const std::string& name) {
    std::istringstream ss(expect_field(in, name));
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    ss >> r >> c;
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            if (!(ss >> m(i, j))) throw Error("model file: truncated matrix '" + name + "'");
        }
    }
    return m;
}

}  // namespace gascast::detail
