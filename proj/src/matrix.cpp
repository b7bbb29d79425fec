#include "lambdet/matrix.hpp"

#include "lambdet/error.hpp"

namespace lambdet {

SquareMatrix symbolic_matrix(const std::string& name, Eigen::Index n) {
  SquareMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = Scalar::var(name + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  return m;
}

SquareMatrix entrywise_inverse(const SquareMatrix& a) {
  SquareMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).inverse();
  return r;
}

SquareMatrix substitute(const SquareMatrix& a, const Bindings& b) {
  SquareMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = substitute(a(i, j), b);
  return r;
}

nlohmann::json to_json(const SquareMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.push_back(to_string(a(i, j)));
    rows.push_back(std::move(r));
  }
  return {{"rows", rows}};
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    fail(ErrorKind::ParseError, "matrix JSON needs a \"rows\" array");
  const auto& rows = j.at("rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  SquareMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[i];
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != n) fail(ErrorKind::SizeMismatch, "matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& e = r[k];
      if (e.is_string()) m(i, k) = parse_scalar(e.get<std::string>());
      else if (e.is_number_integer()) m(i, k) = Scalar(e.get<long>());
      else fail(ErrorKind::ParseError, "matrix entries must be strings or integers");
    }
  }
  return m;
}

}  // namespace lambdet
