#include <stdio.h>
#include "specineq.h"

int main(void) {
    SpecineqSpectrum *s = NULL;
    if (specineq_spectrum_ball(SPECINEQ_DIRICHLET, 3, 1.0, 12, &s) != SPECINEQ_STATUS_OK) {
        fprintf(stderr, "%s\n", specineq_last_error());
        return 1;
    }
    SpecineqCheck r;
    if (specineq_check("ppw_gap", s, 4, &r) != SPECINEQ_STATUS_OK || !r.holds) {
        fprintf(stderr, "%s\n", specineq_last_error());
        return 1;
    }
    printf("ppw_gap holds: %.6f <= %.6f\n", r.lhs, r.rhs);
    if (specineq_check("bogus", s, 1, &r) != SPECINEQ_STATUS_UNKNOWN_INEQUALITY) return 1;
    specineq_spectrum_free(s);
    return 0;
}
