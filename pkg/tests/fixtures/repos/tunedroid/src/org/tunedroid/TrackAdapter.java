package org.tunedroid;

import android.content.Context;
import android.view.LayoutInflater;
import android.view.View;
import android.view.ViewGroup;
import android.widget.BaseAdapter;
import android.widget.ImageView;
import android.widget.TextView;

import java.util.ArrayList;
import java.util.List;

public class TrackAdapter extends BaseAdapter {

    private final LayoutInflater inflater;
    private final List<Track> tracks = new ArrayList<>();

    public TrackAdapter(Context context) {
        inflater = LayoutInflater.from(context);
    }

    public void setTracks(List<Track> items) {
        tracks.clear();
        tracks.addAll(items);
        notifyDataSetChanged();
    }

    @Override
    public int getCount() {
        return tracks.size();
    }

    @Override
    public Track getItem(int position) {
        return tracks.get(position);
    }

    @Override
    public long getItemId(int position) {
        return position;
    }

    @Override
    public View getView(int position, View convertView, ViewGroup parent) {
        View row = convertView != null ? convertView : inflater.inflate(R.layout.row_track, parent, false);
        Track track = getItem(position);
        TextView title = (TextView) row.findViewById(R.id.track_title);
        ImageView albumArt = (ImageView) row.findViewById(R.id.album_art);
        title.setText(TrackUtils.displayTitle(track));
        albumArt.setImageResource(R.drawable.ic_album);
        return row;
    }
}
