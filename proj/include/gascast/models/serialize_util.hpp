#pragma once

#include <Eigen/Dense>
#include <istream>
#include <ostream>
#include <string>

#include "gascast/errors.hpp"

// Line-oriented text persistence shared by the model states. Doubles are
// written with 17 significant digits, so a save/load round trip is exact.
namespace gascast::detail {

void write_scalar(std::ostream& out, const std::string& name, double v);
void write_int(std::ostream& out, const std::string& name, long long v);
void write_vector(std::ostream& out, const std::string& name, const Eigen::VectorXd& v);
void write_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixXd& m);

// consumes the two header lines and checks the model kind
void expect_header(std::istream& in, const std::string& kind);

double read_scalar(std::istream& in, const std::string& name);
long long read_int(std::istream& in, const std::string& name);
Eigen::VectorXd read_vector(std::istream& in, const std::string& name);
Eigen::MatrixXd read_matrix(std::istream& in, const std::string& name);

}  // namespace gascast::detail
