from .functional import complex_fsum, group_close_points, nearest_distances, round_half_up
