#pragma once

#include <stdexcept>
#include <string>

namespace hirank {

/* Every failure that is a property of the mathematical input (a singular
 * curve, a non-root, a lattice vector that cannot define a neighbor, ...)
 * derives from domain_error.  The CLI maps these to exit code 1; anything
 * else is a bug or a usage problem.
 */
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

#define HIRANK_DOMAIN_ERROR(Name)                                           \
    class Name : public ::hirank::domain_error {                            \
    public:                                                                 \
        explicit Name(const std::string& what)                              \
            : ::hirank::domain_error(std::string(#Name ": ") + what) {}     \
    }

HIRANK_DOMAIN_ERROR(DivisionByZero);
HIRANK_DOMAIN_ERROR(InvalidArgument);
HIRANK_DOMAIN_ERROR(ParseError);

}  // namespace hirank
