#pragma once

#include <stdexcept>
#include <string>

namespace thetaglue {

struct beyond_truncation : std::out_of_range {
    explicit beyond_truncation(const std::string& what) : std::out_of_range(what) {}
};

struct division_by_zero : std::domain_error {
    explicit division_by_zero(const std::string& what) : std::domain_error(what) {}
};

struct not_divisible : std::domain_error {
    explicit not_divisible(const std::string& what) : std::domain_error(what) {}
};

struct odd_coefficient : std::domain_error {
    explicit odd_coefficient(const std::string& what) : std::domain_error(what) {}
};

struct non_integer_result : std::domain_error {
    explicit non_integer_result(const std::string& what) : std::domain_error(what) {}
};

struct size_mismatch : std::invalid_argument {
    explicit size_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct invalid_spec : std::invalid_argument {
    explicit invalid_spec(const std::string& what) : std::invalid_argument(what) {}
};

struct bounds_too_large : std::runtime_error {
    explicit bounds_too_large(const std::string& what) : std::runtime_error(what) {}
};

}
