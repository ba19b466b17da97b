package shapes.core;

/**
 * Character grid that shapes draw onto.
 */
public class Canvas {
    private final char[][] cells;
    private final int width;
    private final int height;
    private int strokes;

    public Canvas(int width, int height) {
        this.width = width; // NOAA 1
        this.height = height; // NOAA 1
        cells = new char[height][width]; // NOAA 1
        clear(); // NOMI 1
    }

    public void clear() {
        for (int row = 0; row < height; row++) { // NOL 1, NOAA 1
            for (int col = 0; col < width; col++) { // NOL 1, NOAA 1
                cells[row][col] = ' '; // NOAA 1
            }
        }
        strokes = 0; // NOAA 1
    }

    public void plot(int x, int y, char mark) {
        // points outside the grid are dropped
        if (x < 0 || y < 0 || x >= width || y >= height) { // NOAA 2
            return;
        }
        cells[y][x] = mark; // NOAA 1
        strokes++; // NOAA 1
    }

    public int strokes() {
        return strokes; // NOAA 1
    }

    public String render() {
        StringBuilder sb = new StringBuilder(); // NOL 1
        for (char[] row : cells) { // NOL 1, NOAA 1
            sb.append(row).append('\n'); // NOMI 2
        }
        return sb.toString(); // NOMI 1
    }
}
