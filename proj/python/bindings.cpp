#include <pybind11/pybind11.h>
PYBIND11_MODULE(_ywq, m) { m.doc() = "placeholder"; }
