#include "asvlim/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace asvlim {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: conversion failure");
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Table::Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += t.columns[j];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += cell_text(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size() && j < t.columns.size(); ++j) {
            const auto& c = row[j];
            if (const auto* d = std::get_if<double>(&c))
                obj[t.columns[j]] = *d;
            else if (const auto* i = std::get_if<std::int64_t>(&c))
                obj[t.columns[j]] = *i;
            else
                obj[t.columns[j]] = std::get<std::string>(c);
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

}  // namespace asvlim
