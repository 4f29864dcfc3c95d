/* Compiled as C to keep the public header C-clean. */
#include "qgsa/qgsa.h"

int qgsa_header_compiles_as_c(void) { return QGSA_OK; }
