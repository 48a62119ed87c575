#include <doctest.h>

// filled in alongside the module
