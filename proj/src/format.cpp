#include "latticegrow/format.hpp"

#include <charconv>
#include <stdexcept>

#include "latticegrow/vertex.hpp"

namespace latticegrow {

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("shortest: conversion failed");
  return std::string(buf, ptr);
}

std::string fixed17(double x) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (row_started_) out_ << ',';
  out_ << text;
  row_started_ = true;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

std::string to_string(const Vertex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

Vertex parse_vertex(const std::string& text) {
  Vertex v;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    auto piece = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    std::int64_t c = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), c);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw std::invalid_argument("bad vertex '" + text + "'");
    }
    v.push_back(c);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return v;
}

}  // namespace latticegrow
