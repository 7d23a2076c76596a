def cluster_colors(n):
    palette = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e"]
    return [palette[i % len(palette)] for i in range(n)]
