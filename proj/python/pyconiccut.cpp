#include <pybind11/pybind11.h>
PYBIND11_MODULE(pyconiccut, m) { m.doc() = "placeholder"; }
