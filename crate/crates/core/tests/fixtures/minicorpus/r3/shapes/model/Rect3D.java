package shapes.model;

import shapes.core.Canvas;

public class Rect3D extends Rect {
    private final int depth;

    public Rect3D(int x, int y, int width, int height, int depth) {
        super(x, y, width, height);
        this.depth = depth; // NOAA 1
    }

    @Override
    public void draw(Canvas canvas) {
        super.draw(canvas); // NOMI 1
        for (int k = 1; k <= depth; k++) { // NOL 1, NOAA 1
            canvas.plot(x + width - 1 + k, y + k, '/'); // NOMI 1, NOAA 3
        }
        hline(canvas, x + depth, x + width - 1 + depth, y + depth); // NOMI 1, NOAA 7
    }

    @Override
    public String name() {
        return "rect3d";
    }
}
