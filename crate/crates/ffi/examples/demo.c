/* Build:
 *   cargo build -p iselab-ffi --release
 *   cc crates/ffi/examples/demo.c -Icrates/ffi/include \
 *      target/release/libiselab_ffi.a -lpthread -ldl -lm -o demo
 */
#include <stdio.h>

#include "iselab.h"

int main(void) {
    unsigned parts[] = {2};
    char exact[64];
    double normalized = 0.0;
    if (iselab_exact_moment(ISELAB_FAMILY_BINARY, parts, 1, 10, exact, sizeof exact, NULL, &normalized) != ISELAB_STATUS_OK) {
        fprintf(stderr, "error: %s\n", iselab_last_error_message());
        return 1;
    }
    double limit = 0.0;
    iselab_limit_moment(ISELAB_KIND_ISE, parts, 1, &limit);
    printf("binary n=10, lambda=(2): exact %s, normalized %.6f, limit %.6f\n", exact, normalized, limit);

    IselabTree *tree = NULL;
    if (iselab_tree_sample(ISELAB_FAMILY_PLANE_PM1, 1000, 42, 0, &tree) != ISELAB_STATUS_OK) {
        fprintf(stderr, "error: %s\n", iselab_last_error_message());
        return 1;
    }
    double m2 = 0.0;
    iselab_tree_label_moment(tree, parts, 1, &m2);
    printf("sampled plane tree with %zu nodes, m_2 = %.6f\n", iselab_tree_node_count(tree), m2);
    iselab_tree_free(tree);

    double bad = 0.0;
    if (iselab_density0_moment(-2.0, &bad) != ISELAB_STATUS_OK) {
        printf("expected failure: %s\n", iselab_last_error_message());
    }
    return 0;
}
